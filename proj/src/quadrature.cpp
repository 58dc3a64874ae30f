#include "bergdecomp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::quadrature {

namespace {

constexpr double kPi = 3.14159265358979323846;

GLRule compute_gauss_legendre(int order) {
    if (order < 1) throw ArgumentError("gauss_legendre: order must be positive");
    GLRule rule;
    rule.x.resize(order);
    rule.w.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_order(x) and its derivative.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[order - 1 - i] = w;
    }
    return rule;
}

const GLRule& cached_rule(int order) {
    static std::map<int, GLRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

constexpr int kPanelOrder = 16;

// One abscissa of the composite rule on [0,1], with the cosine endpoint map
// applied for ellipsoid shapes (their nested bounds put algebraic
// singularities at the ends of each level; the map doubles their order).
struct LevelPoint {
    double t;
    double w;
};

std::vector<LevelPoint> level_points(int panels, bool cos_map) {
    const GLRule& rule = cached_rule(kPanelOrder);
    std::vector<LevelPoint> pts;
    pts.reserve(static_cast<size_t>(panels) * kPanelOrder);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        for (int i = 0; i < kPanelOrder; ++i) {
            double t = (p + 0.5 * (1.0 + rule.x[i])) * h;
            double w = 0.5 * h * rule.w[i];
            if (cos_map) {
                w *= 0.5 * kPi * std::sin(kPi * t);
                t = 0.5 * (1.0 - std::cos(kPi * t));
            }
            pts.push_back({t, w});
        }
    }
    return pts;
}

template <class Scalar, class Fn>
Scalar nested_radial(const ReinhardtDomain& D, const Fn& g, int level, std::vector<double>& r,
                     const std::vector<LevelPoint>& pts) {
    auto [lo, hi] = D.quad_bounds(level, r);
    Scalar acc{};
    if (!(hi > lo)) return acc;
    const double len = hi - lo;
    for (const auto& pt : pts) {
        r[level] = lo + len * pt.t;
        Scalar val = (level + 1 == D.dim()) ? g(r) : nested_radial<Scalar>(D, g, level + 1, r, pts);
        acc += (len * pt.w) * val;
    }
    return acc;
}

template <class Scalar, class Fn>
Scalar shadow_pass(const ReinhardtDomain& D, const Fn& g, int panels, RunPolicy policy) {
    const bool cos_map = D.kind() == ReinhardtDomain::Kind::ellipsoid;
    const auto pts = level_points(panels, cos_map);
    auto [lo, hi] = D.quad_bounds(0, std::vector<double>(D.dim(), 0.0));
    if (!(hi > lo)) return Scalar{};
    const double len = hi - lo;
    const long total = static_cast<long>(pts.size());
    std::vector<Scalar> buf(total);
    const bool par = policy == RunPolicy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
    for (long s = 0; s < total; ++s) {
        std::vector<double> r(D.dim(), 0.0);
        r[0] = lo + len * pts[s].t;
        Scalar val = (D.dim() == 1) ? g(r) : nested_radial<Scalar>(D, g, 1, r, pts);
        buf[s] = (len * pts[s].w) * val;
    }
    (void)par;
    Scalar acc{};
    for (long s = 0; s < total; ++s) acc += buf[s]; // fixed order: bitwise reproducible
    return acc;
}

template <class Scalar, class Result, class Fn>
Result refine_loop(const ReinhardtDomain& D, const Fn& g, const QuadratureSpec& spec,
                   RunPolicy policy) {
    if (!D.supports_quadrature())
        throw ArgumentError("quadrature: domain has no nested bounds (use closed forms)");
    if (spec.points_per_axis < kPanelOrder || spec.theta_points < 1)
        throw ArgumentError("quadrature: spec resolution too small");
    int panels = spec.points_per_axis / kPanelOrder;
    Result res;
    Scalar prev = shadow_pass<Scalar>(D, g, panels, policy);
    for (int k = 1; k <= spec.max_refinements; ++k) {
        panels *= 2;
        Scalar cur = shadow_pass<Scalar>(D, g, panels, policy);
        res.value = cur;
        res.est_error = std::abs(cur - prev);
        res.refinements = k;
        if (res.est_error <= spec.refinement_tol * std::max(1.0, std::abs(cur))) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

template <class Scalar>
std::function<Scalar(const std::vector<double>&)> theta_average(
    int n, const std::function<Scalar(const CVec&)>& f, int theta_points) {
    // Uniform periodic grid per angular axis: exact on trig polynomials of
    // degree below theta_points.
    std::vector<std::complex<double>> phase(theta_points);
    for (int t = 0; t < theta_points; ++t) {
        double a = 2.0 * kPi * t / theta_points;
        phase[t] = {std::cos(a), std::sin(a)};
    }
    return [n, f, theta_points, phase](const std::vector<double>& r) -> Scalar {
        CVec z(n);
        std::vector<int> idx(n, 0);
        Scalar acc{};
        long count = 0;
        for (;;) {
            for (int j = 0; j < n; ++j) z[j] = r[j] * phase[idx[j]];
            acc += f(z);
            ++count;
            int j = n - 1;
            while (j >= 0 && ++idx[j] == theta_points) idx[j--] = 0;
            if (j < 0) break;
        }
        double mj = 1.0;
        for (int j = 0; j < n; ++j) mj *= r[j];
        return acc * (mj / static_cast<double>(count));
    };
}

} // namespace

const GLRule& gauss_legendre(int order) { return cached_rule(order); }

QuadResult integrate_radial(const ReinhardtDomain& D,
                            const std::function<double(const std::vector<double>&)>& g,
                            const QuadratureSpec& spec, RunPolicy policy) {
    return refine_loop<double, QuadResult>(D, g, spec, policy);
}

QuadResult integrate_domain(const ReinhardtDomain& D, const std::function<double(const CVec&)>& f,
                            const QuadratureSpec& spec, RunPolicy policy) {
    auto g = theta_average<double>(D.dim(), f, spec.theta_points);
    QuadResult res = refine_loop<double, QuadResult>(D, g, spec, policy);
    double ang = std::pow(2.0 * kPi, D.dim());
    res.value *= ang;
    res.est_error *= ang;
    return res;
}

QuadResultC integrate_domain_complex(const ReinhardtDomain& D,
                                     const std::function<std::complex<double>(const CVec&)>& f,
                                     const QuadratureSpec& spec, RunPolicy policy) {
    auto g = theta_average<std::complex<double>>(D.dim(), f, spec.theta_points);
    QuadResultC res = refine_loop<std::complex<double>, QuadResultC>(D, g, spec, policy);
    double ang = std::pow(2.0 * kPi, D.dim());
    res.value *= ang;
    res.est_error *= ang;
    return res;
}

} // namespace bergdecomp::quadrature
