#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bergdecomp/group.hpp"
#include "bergdecomp/intlin.hpp"
#include "bergdecomp/monomial.hpp"

namespace bergdecomp::domains {

using group::GroupData;
using intlin::IntMatrix;
using intlin::RatMatrix;
using monomial::CVec;

// One coordinate of a product-type shadow: lo <= 0 means the factor reaches
// the axis (disk); lo > 0 is an annulus; punctured deletes just this axis.
struct RadialFactor {
    Rat lo, hi;
    bool punctured = false;
};

struct ProductShape {
    std::vector<RadialFactor> factors;
};

// { sum_j r_j^(2 p_j) < 1 } with integer p_j >= 1.
struct EllipsoidShape {
    std::vector<long> p;
};

// { r : lo_i < F_{row_i}(r) < hi_i }, one constraint per dimension with an
// invertible exponent matrix. lo_i == 0 leaves the constraint one-sided.
struct MonomialShape {
    std::vector<IntVec> rows;
    RatVec lo, hi;
};

// Rotation-invariant domain described by its radial shadow. All membership is
// strict (open domains); axes_deleted removes every coordinate hyperplane.
class ReinhardtDomain {
public:
    static ReinhardtDomain product(std::vector<RadialFactor> factors, bool axes_deleted = false);
    static ReinhardtDomain disk(const Rat& radius, bool axes_deleted = false);
    static ReinhardtDomain polydisk(const RatVec& radii, bool axes_deleted = false);
    static ReinhardtDomain ellipsoid(std::vector<long> p, bool axes_deleted = false);
    static ReinhardtDomain monomial_region(std::vector<IntVec> rows, RatVec lo, RatVec hi,
                                           bool axes_deleted = false);

    int dim() const { return n_; }
    bool axes_deleted() const { return axes_deleted_; }
    ReinhardtDomain with_axes_deleted(bool deleted) const;

    enum class Kind { product, ellipsoid, monomial };
    Kind kind() const;
    const ProductShape& as_product() const;
    const EllipsoidShape& as_ellipsoid() const;
    const MonomialShape& as_monomial() const;
    // Cached inverse of the monomial constraint matrix.
    const RatMatrix& monomial_inverse() const;

    bool contains(const CVec& z) const;
    bool shadow_contains(const std::vector<double>& r) const;
    double sup_radius(int j) const; // +inf when the shadow is unbounded in j
    double inf_radius(int j) const;
    bool bounded() const;
    // Whether the (non-deleted) domain reaches the hyperplane {z_j = 0}.
    bool axis_meets(int j) const;

    // integral over the shadow of prod_j r_j^(a_j) dr, decided analytically.
    // `exact` is populated when the value is rational.
    struct RadialIntegral {
        bool finite = false;
        double value = 0.0;
        std::optional<Rat> exact;
    };
    RadialIntegral radial_power_integral(const RatVec& a) const;

    // Nested-bounds support for tensor quadrature (product and ellipsoid).
    bool supports_quadrature() const;
    std::pair<double, double> quad_bounds(int pos, const std::vector<double>& outer) const;

private:
    ReinhardtDomain() = default;
    int n_ = 0;
    bool axes_deleted_ = false;
    std::variant<ProductShape, EllipsoidShape, MonomialShape> shape_;
    std::optional<RatMatrix> mono_inv_;
    Rat mono_det_abs_;
};

// omega(z) = scale * prod_j |z_j|^(2 mu_j), scale > 0.
struct WeightSpec {
    RatVec mu;
    Rat scale = Rat(1);
    static WeightSpec trivial(int n);
    int dim() const { return static_cast<int>(mu.size()); }
    double eval_radial(const std::vector<double>& r) const;
    double eval(const CVec& z) const;
};

// c(b) = (1 - b) * A^{-1} - 1 (row convention).
RatVec weight_c(const IntVec& b, const IntMatrix& A);

// Transported weight: |det A|^{-1} * |F_{c(b)}|^2 * omega2.
WeightSpec eta_weight(const IntVec& b, const IntMatrix& A, const WeightSpec& omega2);

// Pull a weight on the target back through Phi_A: mu1 = mu2 * A.
WeightSpec pullback_weight(const WeightSpec& omega2, const IntMatrix& A);

// mu_j < 1/2 on every axis the domain reaches.
bool is_admissible(const WeightSpec& w, const ReinhardtDomain& D);

// Smallest non-negative shift m (entrywise, hence lexicographically minimal)
// with b = b* + m*A making eta_b admissible on D2; exact over rationals.
IntVec admissible_representative(const GroupData& G, const IntVec& b_star, const WeightSpec& omega2,
                                 const ReinhardtDomain& D2);

// Compact evaluation region for kernel series. Product/ellipsoid shapes use
// per-axis radial bands; monomial shapes use per-constraint bands on F_{row_i}.
struct ValidityRegion {
    std::vector<double> lo, hi;
    bool constraint_space = false;
};

ValidityRegion default_validity(const ReinhardtDomain& D, double scale);
bool validity_contains(const ReinhardtDomain& D, const ValidityRegion& V, const CVec& z);
// sup over the region of prod_j |z_j|^(k_j); +inf when unbounded.
double sup_abs_monomial(const ReinhardtDomain& D, const ValidityRegion& V,
                        const std::vector<long>& k);

} // namespace bergdecomp::domains
