#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bergdecomp/domains.hpp"
#include "bergdecomp/monomial.hpp"

namespace bergdecomp::quadrature {

using domains::ReinhardtDomain;
using monomial::CVec;

// points_per_axis is split into composite Gauss-Legendre panels of order 16.
// Refinement doubles the panel count on every axis until two consecutive
// estimates agree to refinement_tol (relative against max(1, |I|)).
struct QuadratureSpec {
    int points_per_axis = 64;
    int theta_points = 32;
    double refinement_tol = 1e-10;
    int max_refinements = 8;
};

enum class RunPolicy { serial, parallel };

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    int refinements = 0;
    bool converged = false;
};

struct QuadResultC {
    std::complex<double> value;
    double est_error = 0.0;
    int refinements = 0;
    bool converged = false;
};

// Nodes and weights on [-1, 1]; cached per order, thread-safe.
struct GLRule {
    std::vector<double> x, w;
};
const GLRule& gauss_legendre(int order);

// integral over the radial shadow of g(r) dr (no angular factor, no r-measure).
QuadResult integrate_radial(const ReinhardtDomain& D,
                            const std::function<double(const std::vector<double>&)>& g,
                            const QuadratureSpec& spec = {},
                            RunPolicy policy = RunPolicy::parallel);

// integral of f over the domain with Lebesgue measure on C^n, evaluated as
// (2 pi)^n * integral_shadow (theta-average of f) prod_j r_j dr.
QuadResult integrate_domain(const ReinhardtDomain& D, const std::function<double(const CVec&)>& f,
                            const QuadratureSpec& spec = {},
                            RunPolicy policy = RunPolicy::parallel);

QuadResultC integrate_domain_complex(const ReinhardtDomain& D,
                                     const std::function<std::complex<double>(const CVec&)>& f,
                                     const QuadratureSpec& spec = {},
                                     RunPolicy policy = RunPolicy::parallel);

} // namespace bergdecomp::quadrature
