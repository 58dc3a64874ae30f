#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "bergdecomp/domains.hpp"
#include "bergdecomp/quadrature.hpp"

namespace bergdecomp::bergman {

using domains::ReinhardtDomain;
using domains::ValidityRegion;
using domains::WeightSpec;
using monomial::CVec;

// Squared weighted L2 norm of z^k over D. Rational bookkeeping keeps a factor
// pi^n symbolic: value = to_double(exact) * pi^n whenever exact is set.
struct NormValue {
    bool finite = false;
    double value = 0.0;
    std::optional<Rat> exact;
};

NormValue monomial_norm(const ReinhardtDomain& D, const WeightSpec& w, const std::vector<long>& k);

// Reciprocal norm; exact follows the opposite convention value = exact / pi^n.
struct Coeff {
    double value = 0.0;
    std::optional<Rat> exact;
};

struct KernelBuildSpec {
    long max_degree = 200;  // sup-norm shell cap, exceeded -> ResourceCapError
    double tail_tol = 1e-12;
    double validity_scale = 0.8;
    std::optional<ValidityRegion> validity; // overrides the default band
    quadrature::RunPolicy policy = quadrature::RunPolicy::parallel;
};

// Truncated kernel sum_k coeff_k z^k conj(w)^k with a certified sup bound for
// the dropped shells over the validity region.
class KernelSeries {
public:
    KernelSeries(ReinhardtDomain domain, WeightSpec weight, ValidityRegion validity);

    const ReinhardtDomain& domain() const { return domain_; }
    const WeightSpec& weight() const { return weight_; }
    const ValidityRegion& validity() const { return validity_; }
    const std::map<std::vector<long>, Coeff>& terms() const { return terms_; }
    long truncation_degree() const { return truncation_degree_; }
    double tail_bound() const { return tail_bound_; }

    void set_term(const std::vector<long>& k, Coeff c);
    void set_truncation(long degree, double tail);

    std::complex<double> eval(const CVec& z, const CVec& w) const;
    double diag(const CVec& z) const; // termwise |z^k|^2 sum, each term >= 0

    // Truncated polynomial without the validity/membership checks; the caller
    // owns the tail reasoning (e.g. integrals where the other slot is deep
    // inside the region).
    std::complex<double> eval_raw(const CVec& z, const CVec& w) const;
    double diag_raw(const CVec& z) const;

private:
    void check_point(const CVec& z) const;
    ReinhardtDomain domain_;
    WeightSpec weight_;
    ValidityRegion validity_;
    std::map<std::vector<long>, Coeff> terms_;
    std::vector<long> kmin_, kmax_;
    long truncation_degree_ = 0;
    double tail_bound_ = 0.0;
};

KernelSeries build_kernel(const ReinhardtDomain& D, const WeightSpec& w,
                          const KernelBuildSpec& spec = {});

} // namespace bergdecomp::bergman
