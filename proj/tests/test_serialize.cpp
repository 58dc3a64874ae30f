#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

#include "bergdecomp/bergman.hpp"
#include "bergdecomp/domains.hpp"
#include "bergdecomp/errors.hpp"
#include "bergdecomp/serialize.hpp"
#include "doctest.h"

using namespace bergdecomp;
namespace fs = std::filesystem;
using serialize::json;

namespace {

fs::path fresh_tmp_dir(const char* tag) {
    auto p = fs::temp_directory_path() / (std::string("bergdecomp_test_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

bergman::KernelSeries small_disk_kernel() {
    bergman::KernelBuildSpec spec;
    spec.max_degree = 200;
    spec.tail_tol = 1e-10;
    return bergman::build_kernel(domains::ReinhardtDomain::disk(Rat(1)),
                                 domains::WeightSpec::trivial(1), spec);
}

} // namespace

TEST_CASE("rationals round-trip as p/q strings") {
    Rat reducible(22, 4);
    reducible.canonicalize();
    for (const Rat& q : {Rat(0), Rat(5), Rat(-3, 7), reducible}) {
        const json j = serialize::rat_to_json(q);
        CHECK(serialize::rat_from_json(j) == q);
    }
    CHECK_THROWS_AS(serialize::rat_from_json(json(3.5)), ArgumentError);
}

TEST_CASE("domains round-trip through JSON") {
    std::vector<domains::ReinhardtDomain> cases;
    cases.push_back(domains::ReinhardtDomain::disk(Rat(2)));
    cases.push_back(domains::ReinhardtDomain::polydisk(RatVec{Rat(1), Rat(1, 2)}, true));
    cases.push_back(domains::ReinhardtDomain::product(
        {domains::RadialFactor{Rat(1, 2), Rat(1), false}, domains::RadialFactor{Rat(0), Rat(1), true}}));
    cases.push_back(domains::ReinhardtDomain::ellipsoid({2, 3}));
    cases.push_back(domains::ReinhardtDomain::monomial_region(
        {IntVec{Int(2), Int(-1)}, IntVec{Int(0), Int(1)}}, RatVec{Rat(0), Rat(0)},
        RatVec{Rat(1), Rat(1)}, true));

    std::mt19937 rng(4321);
    std::uniform_real_distribution<double> unif(0.05, 1.2);
    for (const auto& D : cases) {
        const auto E = serialize::domain_from_json(serialize::domain_to_json(D));
        CHECK(E.dim() == D.dim());
        CHECK(E.kind() == D.kind());
        CHECK(E.axes_deleted() == D.axes_deleted());
        for (int t = 0; t < 50; ++t) {
            std::vector<double> r(D.dim());
            for (auto& x : r) x = unif(rng);
            CHECK(E.shadow_contains(r) == D.shadow_contains(r));
        }
    }
}

TEST_CASE("weights and validity regions round-trip") {
    domains::WeightSpec w{RatVec{Rat(-1, 2), Rat(3)}, Rat(1, 4)};
    const auto w2 = serialize::weight_from_json(serialize::weight_to_json(w));
    CHECK(w2.mu == w.mu);
    CHECK(w2.scale == w.scale);
    CHECK_THROWS_AS(serialize::weight_from_json(json{{"mu", json::array({"0"})}, {"scale", "0"}}),
                    ArgumentError);

    domains::ValidityRegion V{{0.1, 0.0}, {0.8, 0.9}, true};
    const auto V2 = serialize::validity_from_json(serialize::validity_to_json(V));
    CHECK(V2.lo == V.lo);
    CHECK(V2.hi == V.hi);
    CHECK(V2.constraint_space == V.constraint_space);
}

TEST_CASE("kernel series round-trip preserves values bit for bit") {
    const auto K = small_disk_kernel();
    const auto K2 = serialize::kernel_from_json(serialize::kernel_to_json(K));
    REQUIRE(K2.terms().size() == K.terms().size());
    for (const auto& [k, c] : K.terms()) {
        const auto it = K2.terms().find(k);
        REQUIRE(it != K2.terms().end());
        CHECK(it->second.value == c.value);
        REQUIRE(it->second.exact.has_value() == c.exact.has_value());
        if (c.exact) CHECK(*it->second.exact == *c.exact);
    }
    CHECK(K2.truncation_degree() == K.truncation_degree());
    CHECK(K2.tail_bound() == K.tail_bound());
    const monomial::CVec z{std::complex<double>(0.31, -0.22)};
    const monomial::CVec w{std::complex<double>(-0.12, 0.4)};
    CHECK(K2.eval(z, w) == K.eval(z, w));
}

TEST_CASE("kernel cache stores, loads, and respects the lock file") {
    const auto dir = fresh_tmp_dir("cache");
    const auto K = small_disk_kernel();
    bergman::KernelBuildSpec spec;
    spec.max_degree = 200;
    spec.tail_tol = 1e-10;
    const auto key = serialize::cache_key(K.domain(), K.weight(), spec);
    CHECK(key == serialize::cache_key(K.domain(), K.weight(), spec));
    bergman::KernelBuildSpec other = spec;
    other.tail_tol = 1e-6;
    CHECK(key != serialize::cache_key(K.domain(), K.weight(), other));

    CHECK_FALSE(serialize::load_cached_kernel(dir.string(), key).has_value());
    CHECK(serialize::store_cached_kernel(dir.string(), key, K));
    const auto L = serialize::load_cached_kernel(dir.string(), key);
    REQUIRE(L.has_value());
    CHECK(L->terms().size() == K.terms().size());
    const monomial::CVec z{std::complex<double>(0.5, 0.1)};
    CHECK(L->eval(z, z) == K.eval(z, z));

    // A held lock blocks writing but not reading.
    const auto key2 = key + "x";
    std::ofstream(dir / (key2 + ".lock")) << "held";
    CHECK_FALSE(serialize::store_cached_kernel(dir.string(), key2, K));

    // Corrupt entries count as misses.
    std::ofstream(dir / (key2 + ".json")) << "{not json";
    CHECK_FALSE(serialize::load_cached_kernel(dir.string(), key2).has_value());

    // cached_build: second call is served from disk with identical behavior.
    const auto dir2 = fresh_tmp_dir("cache2");
    const auto A = serialize::cached_build(K.domain(), K.weight(), spec, dir2.string());
    CHECK(fs::exists(dir2 / (key + ".json")));
    const auto B = serialize::cached_build(K.domain(), K.weight(), spec, dir2.string());
    CHECK(A.eval(z, z) == B.eval(z, z));
    CHECK(A.terms().size() == B.terms().size());
    fs::remove_all(dir);
    fs::remove_all(dir2);
}
