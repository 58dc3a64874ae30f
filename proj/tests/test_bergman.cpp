#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include "bergdecomp/bergman.hpp"
#include "bergdecomp/errors.hpp"
#include "bergdecomp/quadrature.hpp"

using namespace bergdecomp;
using namespace bergdecomp::bergman;
using namespace bergdecomp::domains;
using quadrature::QuadratureSpec;
using quadrature::RunPolicy;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

std::complex<double> cis(double r, double t) {
    return {r * std::cos(t), r * std::sin(t)};
}

WeightSpec wspec(std::initializer_list<Rat> mu, Rat scale = Rat(1)) {
    WeightSpec w;
    w.mu = RatVec(mu);
    w.scale = scale;
    return w;
}

} // namespace

TEST_CASE("monomial norms on the disk match the half-integer weight family") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    auto even = wspec({Rat(-1, 2)}, Rat(1, 2));
    auto odd = wspec({Rat(0)}, Rat(1, 2));
    for (long k = 0; k <= 6; ++k) {
        auto ne = monomial_norm(disk, even, {k});
        REQUIRE(ne.finite);
        REQUIRE(ne.exact.has_value());
        CHECK(*ne.exact == Rat(1, 2 * k + 1)); // norm = pi/(2k+1)
        CHECK(ne.value == doctest::Approx(M_PI / (2 * k + 1)).epsilon(1e-14));

        auto no = monomial_norm(disk, odd, {k});
        REQUIRE(no.exact.has_value());
        CHECK(*no.exact == Rat(1, 2 * k + 2)); // norm = pi/(2k+2)
    }
    // Unweighted disk: pi/(k+1).
    auto nu = monomial_norm(disk, WeightSpec::trivial(1), {3});
    CHECK(*nu.exact == Rat(1, 4));
}

TEST_CASE("monomial norm against quadrature on a fractional-weight ellipsoid") {
    auto E = ReinhardtDomain::ellipsoid({2, 2});
    auto w = wspec({Rat(-1, 4), Rat(0)});
    auto nv = monomial_norm(E, w, {1, 2});
    REQUIRE(nv.finite);
    CHECK_FALSE(nv.exact.has_value());
    QuadratureSpec qs;
    qs.refinement_tol = 1e-11;
    auto ref = quadrature::integrate_domain(
        E,
        [&](const monomial::CVec& z) {
            return std::norm(z[0]) * std::pow(std::norm(z[1]), 2) * w.eval(z);
        },
        qs);
    CHECK(nv.value == doctest::Approx(ref.value).epsilon(1e-8));
}

TEST_CASE("disk kernel: exact coefficients and the closed form") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    auto K = build_kernel(disk, WeightSpec::trivial(1));
    CHECK(K.truncation_degree() < 150);
    CHECK(K.tail_bound() < 1e-10);
    for (long k = 0; k <= 10; ++k) {
        auto it = K.terms().find({k});
        REQUIRE(it != K.terms().end());
        REQUIRE(it->second.exact.has_value());
        CHECK(*it->second.exact == Rat(k + 1)); // coeff = (k+1)/pi
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> rad(0.0, 0.7), ang(0.0, 2 * M_PI);
    for (int t = 0; t < 25; ++t) {
        auto z = cis(rad(rng), ang(rng));
        auto w = cis(rad(rng), ang(rng));
        auto u = z * std::conj(w);
        auto ref = 1.0 / (M_PI * std::pow(1.0 - u, 2));
        auto got = K.eval({z}, {w});
        CHECK(std::abs(got - ref) < 1e-10);
    }
}

TEST_CASE("weighted disk kernels carry the shifted coefficient families") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    auto Ke = build_kernel(disk, wspec({Rat(-1, 2)}, Rat(1, 2)));
    auto Ko = build_kernel(disk, wspec({Rat(0)}, Rat(1, 2)));
    for (long k = 0; k <= 8; ++k) {
        CHECK(*Ke.terms().at({k}).exact == Rat(2 * k + 1));
        CHECK(*Ko.terms().at({k}).exact == Rat(2 * k + 2));
    }
}

TEST_CASE("polydisk kernel is the tensor product of disk kernels") {
    auto poly = ReinhardtDomain::polydisk(RatVec{Rat(1), Rat(1)});
    auto K = build_kernel(poly, WeightSpec::trivial(2));
    for (long k1 = 0; k1 <= 5; ++k1)
        for (long k2 = 0; k2 <= 5; ++k2)
            CHECK(*K.terms().at({k1, k2}).exact == Rat((k1 + 1) * (k2 + 1)));
    auto z = monomial::CVec{cis(0.5, 0.4), cis(0.3, -1.0)};
    auto w = monomial::CVec{cis(0.6, 2.0), cis(0.2, 0.7)};
    std::complex<double> ref = 1.0;
    for (int j = 0; j < 2; ++j) ref /= M_PI * std::pow(1.0 - z[j] * std::conj(w[j]), 2);
    CHECK(std::abs(K.eval(z, w) - ref) < 1e-9);
}

TEST_CASE("annulus kernel keeps two-sided powers with exact data") {
    auto ann = ReinhardtDomain::product({RadialFactor{Rat(1, 2), Rat(1)}});
    auto K = build_kernel(ann, WeightSpec::trivial(1));
    // norm(k) = 2 pi (1 - 2^(-2k-2))/(2k+2); k = -1 integrates the log.
    CHECK(*K.terms().at({0}).exact == Rat(4, 3));      // 1 / (2 * (1 - 1/4) / 2)
    CHECK(*K.terms().at({-2}).exact == Rat(1, 3));     // norm 3 pi
    auto lg = K.terms().at({-1});
    CHECK_FALSE(lg.exact.has_value());
    CHECK(lg.value == doctest::Approx(1.0 / (2 * M_PI * std::log(2.0))).epsilon(1e-13));

    // Hermitian symmetry within the certified band.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> rad(0.63, 0.79), ang(0.0, 2 * M_PI);
    for (int t = 0; t < 20; ++t) {
        monomial::CVec z = {cis(rad(rng), ang(rng))};
        monomial::CVec w = {cis(rad(rng), ang(rng))};
        auto a = K.eval(z, w);
        auto b = K.eval(w, z);
        CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::abs(a));
    }
}

TEST_CASE("kernels reproduce holomorphic polynomials under their weight") {
    QuadratureSpec qs;
    qs.theta_points = 512;
    qs.refinement_tol = 1e-11;

    auto disk = ReinhardtDomain::disk(Rat(1));
    auto w_even = wspec({Rat(-1, 2)}, Rat(1, 2));
    auto K = build_kernel(disk, w_even);
    auto f = [](const monomial::CVec& z) {
        return std::complex<double>(0.5, -1.0) + z[0] * z[0] * z[0] * 2.0 - z[0];
    };
    monomial::CVec z0 = {cis(0.36, 0.9)};
    auto got = quadrature::integrate_domain_complex(
        disk,
        [&](const monomial::CVec& w) { return K.eval_raw(z0, w) * f(w) * w_even.eval(w); },
        qs);
    CHECK(got.converged);
    CHECK(std::abs(got.value - f(z0)) < 1e-8);

    auto ann = ReinhardtDomain::product({RadialFactor{Rat(1, 2), Rat(1)}});
    auto Ka = build_kernel(ann, WeightSpec::trivial(1));
    auto g = [](const monomial::CVec& z) { return 1.0 / z[0] + 2.0 * z[0]; };
    monomial::CVec z1 = {cis(0.7, -0.4)};
    auto got2 = quadrature::integrate_domain_complex(
        ann, [&](const monomial::CVec& w) { return Ka.eval_raw(z1, w); }, qs);
    // Reproduces f = 1 as a sanity anchor, then the Laurent sample.
    CHECK(std::abs(got2.value - 1.0) < 1e-8);
    auto got3 = quadrature::integrate_domain_complex(
        ann, [&](const monomial::CVec& w) { return Ka.eval_raw(z1, w) * g(w); }, qs);
    CHECK(std::abs(got3.value - g(z1)) < 1e-8);
}

TEST_CASE("diagonal positivity and domain monotonicity") {
    auto small = ReinhardtDomain::disk(Rat(1));
    auto big = ReinhardtDomain::disk(Rat(5, 4));
    auto Ks = build_kernel(small, WeightSpec::trivial(1));
    auto Kb = build_kernel(big, WeightSpec::trivial(1));
    for (double r : {0.0, 0.2, 0.5, 0.75}) {
        monomial::CVec z = {cis(r, 1.3)};
        double ds = Ks.diag(z);
        CHECK(ds > 0.0);
        CHECK(ds >= Kb.diag(z)); // shrinking the domain raises the kernel
    }

    auto ann = ReinhardtDomain::product({RadialFactor{Rat(1, 2), Rat(1)}});
    auto Ka = build_kernel(ann, WeightSpec::trivial(1));
    monomial::CVec z = {cis(0.7, 0.0)};
    CHECK(Ka.diag(z) >= Ks.diag(z));
}

TEST_CASE("deleting axes leaves the kernel alone when no new norms converge") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    auto w = wspec({Rat(-1, 2)}, Rat(1, 2));
    auto full = build_kernel(disk, w);
    auto star = build_kernel(disk.with_axes_deleted(true), w);
    REQUIRE(full.terms().size() == star.terms().size());
    for (const auto& [k, c] : full.terms()) {
        auto it = star.terms().find(k);
        REQUIRE(it != star.terms().end());
        CHECK(*c.exact == *it->second.exact);
    }

    auto E = ReinhardtDomain::ellipsoid({2, 2});
    auto we = wspec({Rat(-1, 2), Rat(-1)});
    auto fe = build_kernel(E, we);
    auto se = build_kernel(E.with_axes_deleted(true), we);
    CHECK(fe.terms().size() == se.terms().size());
    CHECK(fe.terms().count({0, 0}) == 0); // |w2|^-2 kills the k2 = 0 column
    CHECK(fe.terms().count({0, 1}) == 1);
    for (const auto& [k, c] : fe.terms()) CHECK(*c.exact == *se.terms().at(k).exact);
}

TEST_CASE("deleting axes can add finitely many Laurent directions") {
    // |z1 z2| < 1, |z2| < 1 with weight |z2|^6: the deleted-axes space gains
    // exactly three monomials with a negative second exponent.
    auto X = ReinhardtDomain::monomial_region({iv({1, 1}), iv({0, 1})}, RatVec{Rat(0), Rat(0)},
                                              RatVec{Rat(1), Rat(1)});
    auto w1 = wspec({Rat(0), Rat(3)});
    auto full = build_kernel(X, w1);
    auto star = build_kernel(X.with_axes_deleted(true), w1);
    std::set<std::vector<long>> fk, sk;
    for (const auto& [k, c] : full.terms()) fk.insert(k);
    for (const auto& [k, c] : star.terms()) sk.insert(k);
    std::set<std::vector<long>> extra;
    for (const auto& k : sk)
        if (!fk.count(k)) extra.insert(k);
    std::set<std::vector<long>> expect = {{0, -1}, {0, -2}, {1, -1}};
    CHECK(extra == expect);
    for (const auto& k : fk) CHECK(sk.count(k) == 1);
    for (const auto& k : fk) CHECK(*full.terms().at(k).exact == *star.terms().at(k).exact);
    // Finiteness cut inside the full basis: k2 >= k1 - 2.
    CHECK(fk.count({3, 1}) == 1);
    CHECK(fk.count({3, 0}) == 0);
}

TEST_CASE("build determinism: serial and parallel agree term by term") {
    auto E = ReinhardtDomain::ellipsoid({1, 2});
    KernelBuildSpec sp;
    sp.policy = RunPolicy::serial;
    auto a = build_kernel(E, WeightSpec::trivial(2), sp);
    sp.policy = RunPolicy::parallel;
    auto b = build_kernel(E, WeightSpec::trivial(2), sp);
    REQUIRE(a.terms().size() == b.terms().size());
    for (const auto& [k, c] : a.terms()) CHECK(c.value == b.terms().at(k).value);
    CHECK(a.truncation_degree() == b.truncation_degree());
}

TEST_CASE("kernel build failure modes") {
    auto disk = ReinhardtDomain::disk(Rat(1));
    KernelBuildSpec tight;
    tight.max_degree = 5;
    CHECK_THROWS_AS(build_kernel(disk, WeightSpec::trivial(1), tight), ResourceCapError);

    // A validity band touching the axis cannot certify negative powers.
    auto ann = ReinhardtDomain::product({RadialFactor{Rat(1, 2), Rat(1)}});
    KernelBuildSpec bad;
    bad.validity = ValidityRegion{{0.0}, {0.8}, false};
    CHECK_THROWS_AS(build_kernel(ann, WeightSpec::trivial(1), bad), ArgumentError);

    auto K = build_kernel(disk, WeightSpec::trivial(1));
    CHECK_THROWS_AS(K.eval({cis(1.2, 0.0)}, {cis(0.1, 0.0)}), EvalDomainError);
    CHECK_THROWS_AS(K.eval({cis(0.9, 0.0)}, {cis(0.1, 0.0)}), EvalDomainError); // outside band
    CHECK(std::abs(K.eval_raw({cis(0.9, 0.0)}, {cis(0.1, 0.0)})) > 0.0);
}
