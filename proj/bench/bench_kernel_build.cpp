// Wall-clock comparison of the OpenMP build paths against the serial
// reference. Agreement must be bitwise in every case: the parallel loops
// distribute independent closed-form norms (kernel build) or write panel
// contributions into a buffer that is reduced in fixed order (quadrature),
// so the two policies execute the same floating-point operations.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bergdecomp/bergman.hpp"
#include "bergdecomp/domains.hpp"
#include "bergdecomp/quadrature.hpp"

using namespace bergdecomp;
using domains::RadialFactor;
using domains::ReinhardtDomain;
using domains::WeightSpec;
using quadrature::RunPolicy;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct BuildCase {
    std::string label;
    ReinhardtDomain D;
    WeightSpec w;
    bergman::KernelBuildSpec spec;
};

// -1: structural mismatch (sizes or keys); otherwise the count of terms whose
// value or exact annotation differs.
long diff_terms(const bergman::KernelSeries& a, const bergman::KernelSeries& b) {
    if (a.terms().size() != b.terms().size()) return -1;
    long bad = 0;
    auto it = b.terms().begin();
    for (const auto& [k, c] : a.terms()) {
        if (it->first != k) return -1;
        const auto& d = it->second;
        const bool same = c.value == d.value && c.exact.has_value() == d.exact.has_value() &&
                          (!c.exact || *c.exact == *d.exact);
        if (!same) ++bad;
        ++it;
    }
    return bad;
}

bergman::KernelBuildSpec mkspec(long deg, double tail, double scale) {
    bergman::KernelBuildSpec s;
    s.max_degree = deg;
    s.tail_tol = tail;
    s.validity_scale = scale;
    return s;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, %d thread(s)\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at configure time; both columns run the serial code\n\n");
#endif

    std::vector<BuildCase> cases;
    cases.push_back({"ball 2d, trivial weight",
                     ReinhardtDomain::ellipsoid({1, 1}),
                     WeightSpec::trivial(2),
                     mkspec(600, 1e-13, 0.95)});
    cases.push_back({"ball 2d, mu=(-1/2,-1)",
                     ReinhardtDomain::ellipsoid({1, 1}),
                     WeightSpec{RatVec{Rat(-1, 2), Rat(-1)}, Rat(1, 4)},
                     mkspec(600, 1e-13, 0.95)});
    cases.push_back({"ball 3d, trivial weight",
                     ReinhardtDomain::ellipsoid({1, 1, 1}),
                     WeightSpec::trivial(3),
                     mkspec(400, 1e-12, 0.82)});
    cases.push_back({"disk x annulus (two-sided)",
                     ReinhardtDomain::product({RadialFactor{Rat(0), Rat(1), false},
                                               RadialFactor{Rat(1, 2), Rat(1), false}}),
                     WeightSpec::trivial(2),
                     mkspec(400, 1e-12, 0.9)});
    cases.push_back({"hartogs wedge |z1|^2<|z2|<1",
                     ReinhardtDomain::monomial_region({IntVec{2, -1}, IntVec{0, 1}},
                                                      RatVec{Rat(0), Rat(0)},
                                                      RatVec{Rat(1), Rat(1)}),
                     WeightSpec::trivial(2),
                     mkspec(400, 1e-12, 0.8)});

    int failures = 0;

    std::printf("kernel build\n");
    std::printf("  %-28s %8s %6s %10s %10s %8s  %s\n", "workload", "terms", "deg",
                "serial", "parallel", "speedup", "agreement");
    for (const auto& c : cases) {
        auto spec_s = c.spec;
        spec_s.policy = RunPolicy::serial;
        auto spec_p = c.spec;
        spec_p.policy = RunPolicy::parallel;

        // Untimed first build: heap growth and GMP pool warm-up would
        // otherwise be charged to whichever policy runs first.
        (void)bergman::build_kernel(c.D, c.w, spec_s);

        auto t0 = Clock::now();
        const auto Ks = bergman::build_kernel(c.D, c.w, spec_s);
        const double ser = ms_since(t0);

        t0 = Clock::now();
        const auto Kp = bergman::build_kernel(c.D, c.w, spec_p);
        const double par = ms_since(t0);

        const long bad = diff_terms(Ks, Kp);
        const char* ok = bad == 0 ? "bitwise" : "MISMATCH";
        if (bad != 0) ++failures;
        std::printf("  %-28s %8zu %6ld %8.1fms %8.1fms %7.2fx  %s\n", c.label.c_str(),
                    Ks.terms().size(), Ks.truncation_degree(), ser, par,
                    par > 0.0 ? ser / par : 0.0, ok);
    }

    // Quadrature passes share one panel layout; the parallel loop fills a
    // buffer indexed by panel node, reduced afterwards in index order.
    std::printf("\ndomain quadrature\n");
    std::printf("  %-28s %8s %6s %10s %10s %8s  %s\n", "workload", "value", "refs",
                "serial", "parallel", "speedup", "agreement");

    struct QuadCase {
        std::string label;
        ReinhardtDomain D;
        std::function<double(const monomial::CVec&)> f;
    };
    std::vector<QuadCase> qcases;
    qcases.push_back({"ball 2d, exp(Re z1 conj z2)",
                      ReinhardtDomain::ellipsoid({1, 1}),
                      [](const monomial::CVec& z) {
                          return std::exp(std::real(z[0] * std::conj(z[1])));
                      }});
    qcases.push_back({"disk x annulus, |z1+z2^2|^2",
                      ReinhardtDomain::product({RadialFactor{Rat(0), Rat(1), false},
                                                RadialFactor{Rat(1, 2), Rat(1), false}}),
                      [](const monomial::CVec& z) {
                          return std::norm(z[0] + z[1] * z[1]);
                      }});

    quadrature::QuadratureSpec qs;
    qs.points_per_axis = 64;
    qs.theta_points = 24;
    qs.refinement_tol = 1e-12;
    qs.max_refinements = 4;

    for (const auto& q : qcases) {
        (void)quadrature::integrate_domain(q.D, q.f, qs, RunPolicy::serial);

        auto t0 = Clock::now();
        const auto rs = quadrature::integrate_domain(q.D, q.f, qs, RunPolicy::serial);
        const double ser = ms_since(t0);

        t0 = Clock::now();
        const auto rp = quadrature::integrate_domain(q.D, q.f, qs, RunPolicy::parallel);
        const double par = ms_since(t0);

        const bool same = rs.value == rp.value;
        if (!same) ++failures;
        std::printf("  %-28s %8.4f %6d %8.1fms %8.1fms %7.2fx  %s\n", q.label.c_str(), rs.value,
                    rs.refinements, ser, par, par > 0.0 ? ser / par : 0.0,
                    same ? "bitwise" : "MISMATCH");
    }

    if (failures) {
        std::printf("\n%d workload(s) disagreed between policies\n", failures);
        return 1;
    }
    std::printf("\nall workloads agree bitwise across policies\n");
    return 0;
}
