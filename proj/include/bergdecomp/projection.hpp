#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bergdecomp/domains.hpp"
#include "bergdecomp/group.hpp"
#include "bergdecomp/monomial.hpp"
#include "bergdecomp/quadrature.hpp"

namespace bergdecomp::projection {

using group::GroupData;
using monomial::CVec;
using Fn = std::function<std::complex<double>(const CVec&)>;

// Pi_b[f](z) = (1/#G) sum_m chi_b(m) f(sigma_m z): keeps exactly the monomials
// z^a with a = -b modulo the row lattice of A.
std::complex<double> project_chi(const GroupData& G, const IntVec& b, const Fn& f, const CVec& z);
Fn projector(const GroupData& G, const IntVec& b, Fn f);

// Push a chi_b-component down the quotient map: T_b[g](w) = (g * F_b)(z) at
// any z with Phi_A(z) = w; the product is action-invariant, so the fiber
// point does not matter. w must stay off the coordinate hyperplanes.
std::complex<double> transport_Tb(const GroupData& G, const IntVec& b, const Fn& g, const CVec& w);

// Max deviations of the projector family over the supplied sample points.
struct AlgebraReport {
    double completeness = 0.0; // sum_b Pi_b f = f
    double idempotence = 0.0;  // Pi_b Pi_b = Pi_b
    double annihilation = 0.0; // Pi_b Pi_b' = 0 across distinct characters
    double equivariance = 0.0; // Pi_b f o sigma_m = conj(chi_b(m)) Pi_b f
    double invariance = 0.0;   // (Pi_b f) * F_b is action-invariant
    double worst() const;
};
AlgebraReport check_projection_algebra(const GroupData& G, const Fn& f,
                                       const std::vector<CVec>& pts);

// Both sides of the norm identity: the squared norm of Pi_b f on D1 against
// omega1 equals the squared norm of its transport on D2 against eta_b. Each
// side is computed by quadrature.
struct NormIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double relative() const;
};
NormIdentity norm_identity_residual(const GroupData& G, const IntVec& b, const Fn& f,
                                    const domains::ReinhardtDomain& D1,
                                    const domains::WeightSpec& omega1,
                                    const domains::ReinhardtDomain& D2,
                                    const domains::WeightSpec& eta,
                                    const quadrature::QuadratureSpec& quad = {},
                                    quadrature::RunPolicy policy = quadrature::RunPolicy::parallel);

} // namespace bergdecomp::projection
