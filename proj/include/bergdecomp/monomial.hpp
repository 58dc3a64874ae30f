#pragma once

#include <complex>
#include <vector>

#include "bergdecomp/group.hpp"
#include "bergdecomp/intlin.hpp"

namespace bergdecomp::monomial {

using intlin::IntMatrix;
using intlin::RatMatrix;
using group::GroupData;

using CVec = std::vector<std::complex<double>>;

// Exponent vector: integral entries act on arbitrary off-axes complex points,
// rational entries only on positive real tuples (radii).
struct Exponent {
    RatVec e;
    static Exponent from_ints(const IntVec& k);
    static Exponent from_longs(const std::vector<long>& k);
    bool integral() const;
    int dim() const { return static_cast<int>(e.size()); }
};

bool off_axes(const CVec& z);

// z^b for an integer exponent row; negative entries require z off the
// corresponding axis.
std::complex<double> eval_F(const IntVec& b, const CVec& z);
std::complex<double> eval_F(const Exponent& b, const CVec& z);

// r^a on positive real tuples, rational exponents allowed.
double eval_F_real(const RatVec& a, const std::vector<double>& r);

// Phi_A(z) = (F_{row_1}(z), ..., F_{row_n}(z)).
CVec eval_Phi(const IntMatrix& A, const CVec& z);
std::vector<double> eval_Phi_real(const RatMatrix& M, const std::vector<double>& r);

// det of the complex Jacobian of Phi_A at z: det(A) * z^{1*A - 1}.
std::complex<double> jacobian_det(const IntMatrix& A, const CVec& z);

// Polar split z_j = r_j * exp(2*pi*i*theta_j), theta in [0,1).
struct PolarPoint {
    std::vector<double> r;
    std::vector<double> theta;
};
PolarPoint polar(const CVec& z);
CVec from_polar(const std::vector<double>& r, const std::vector<double>& theta);

// Coordinate rotation by the coset of m: z_j * exp(2*pi*i*xi_phase_j(m)).
CVec action_apply(const GroupData& G, const IntVec& m, const CVec& z);

// All |det A| preimages of an off-axes point w under Phi_A: the principal
// preimage through A^{-1} composed with the group orbit.
std::vector<CVec> fiber(const GroupData& G, const CVec& w);

} // namespace bergdecomp::monomial
