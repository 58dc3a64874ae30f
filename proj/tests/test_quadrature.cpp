#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "bergdecomp/domains.hpp"
#include "bergdecomp/errors.hpp"
#include "bergdecomp/quadrature.hpp"

using namespace bergdecomp;
using namespace bergdecomp::domains;
using namespace bergdecomp::quadrature;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("Gauss-Legendre rules: exactness and normalization") {
    const auto& r5 = gauss_legendre(5);
    double wsum = 0.0;
    for (double w : r5.w) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Degree 9 is the exactness limit for order 5.
    for (int d = 0; d <= 9; ++d) {
        double num = 0.0;
        for (size_t i = 0; i < r5.x.size(); ++i) num += r5.w[i] * std::pow(r5.x[i], d);
        double ref = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
        CHECK(num == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("radial quadrature matches closed forms on product shapes") {
    auto poly = ReinhardtDomain::polydisk(RatVec{Rat(1), Rat(1, 2)});
    auto res = integrate_radial(
        poly, [](const std::vector<double>& r) { return r[0] * r[0] * r[0] * r[1]; });
    CHECK(res.converged);
    CHECK(res.value == doctest::Approx(1.0 / 32.0).epsilon(1e-13));

    auto ann = ReinhardtDomain::product({RadialFactor{Rat(1, 2), Rat(1)}});
    auto lg = integrate_radial(ann, [](const std::vector<double>& r) { return 1.0 / r[0]; });
    CHECK(lg.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("radial quadrature matches the analytic ellipsoid integrals") {
    auto E = ReinhardtDomain::ellipsoid({2, 2});
    auto I = E.radial_power_integral(RatVec{Rat(1), Rat(1)});
    auto res = integrate_radial(E, [](const std::vector<double>& r) { return r[0] * r[1]; });
    CHECK(res.converged);
    CHECK(res.value == doctest::Approx(I.value).epsilon(1e-9));

    // Polynomial inner bound: (1 - r1^2)^2 is smooth, converges immediately.
    auto E12 = ReinhardtDomain::ellipsoid({1, 2});
    auto J = E12.radial_power_integral(RatVec{Rat(1), Rat(3)});
    auto rj = integrate_radial(E12, [](const std::vector<double>& r) {
        return r[0] * r[1] * r[1] * r[1];
    });
    CHECK(rj.value == doctest::Approx(J.value).epsilon(1e-12));

    // Constant integrand stresses the (1 - r1^4)^(1/4) boundary factor.
    auto K = E.radial_power_integral(RatVec{Rat(0), Rat(0)});
    QuadratureSpec hard;
    hard.refinement_tol = 1e-9;
    auto rk = integrate_radial(E, [](const std::vector<double>&) { return 1.0; }, hard);
    CHECK(rk.value == doctest::Approx(K.value).epsilon(1e-6));
}

TEST_CASE("domain integrals: measure, orthogonality, amplitude") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    auto m2 = integrate_domain(disk, [](const CVec& z) { return std::norm(z[0]); });
    CHECK(m2.value == doctest::Approx(M_PI / 2.0).epsilon(1e-12));

    // Pure rotation harmonics vanish on the uniform angular grid.
    auto zero = integrate_domain_complex(disk, [](const CVec& z) {
        return z[0] * z[0] * z[0] * z[0] * z[0];
    });
    CHECK(std::abs(zero.value) < 1e-14);

    auto ann2 = ReinhardtDomain::product(
        {RadialFactor{Rat(1, 2), Rat(1)}, RadialFactor{Rat(1, 2), Rat(1)}});
    auto ortho = integrate_domain_complex(
        ann2, [](const CVec& z) { return z[0] * std::conj(z[1]); });
    CHECK(std::abs(ortho.value) < 1e-13);
}

TEST_CASE("theta-dependent ellipsoid integral, serial equals parallel") {
    auto E = ReinhardtDomain::ellipsoid({2, 2});
    auto f = [](const CVec& z) { return std::norm(z[0] + z[1]); };
    QuadratureSpec spec;
    spec.theta_points = 8; // |z1+z2|^2 has angular degree 1
    auto par = integrate_domain(E, f, spec, RunPolicy::parallel);
    auto ser = integrate_domain(E, f, spec, RunPolicy::serial);
    CHECK(par.value == doctest::Approx(ser.value).epsilon(1e-13));

    // Cross terms average out: the integral is two copies of |z1|^2 over E.
    auto I31 = E.radial_power_integral(RatVec{Rat(3), Rat(1)});
    double ref = 2.0 * std::pow(2.0 * M_PI, 2) * I31.value;
    CHECK(par.value == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("quadrature rejects shapes without nested bounds") {
    auto H = ReinhardtDomain::monomial_region({iv({1, -1}), iv({0, 1})}, RatVec{Rat(0), Rat(0)},
                                              RatVec{Rat(1), Rat(1)});
    CHECK_THROWS_AS(integrate_radial(H, [](const std::vector<double>&) { return 1.0; }),
                    ArgumentError);
}
