#include "bergdecomp/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "bergdecomp/errors.hpp"
#include "bergdecomp/intlin.hpp"

namespace bergdecomp::identities {

namespace {

constexpr double kPi = 3.14159265358979323846;

IntVec negated(const IntVec& b) {
    IntVec r(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) r[j] = -b[j];
    return r;
}

std::complex<double> outer_factor(const IntVec& b, const CVec& z) {
    return monomial::eval_F(negated(b), z);
}

// Axes-deleted kernels can carry negative powers, whose sup over a band
// touching an axis is unbounded and makes build_kernel refuse the default
// band. When that happens (and only then, so admissible configurations keep
// the band and the coefficient map of the full-domain build), retry with the
// default band shrunk away from the axes by the same proportion it stays
// below the outer boundary.
KernelSeries build_star_kernel(const ReinhardtDomain& D, const WeightSpec& w,
                               const KernelBuildSpec& spec, const KernelBuilder& make) {
    if (spec.validity) return make(D, w, spec);
    try {
        return make(D, w, spec);
    } catch (const ArgumentError&) {
        KernelBuildSpec s = spec;
        auto V = domains::default_validity(D, spec.validity_scale);
        for (std::size_t j = 0; j < V.lo.size(); ++j)
            V.lo[j] = std::max(V.lo[j], (1.0 - spec.validity_scale) * V.hi[j]);
        s.validity = std::move(V);
        return make(D, w, s);
    }
}

} // namespace

DecompositionScenario build_scenario(const intlin::IntMatrix& A, const ReinhardtDomain& D1,
                                     const ReinhardtDomain& D2, const WeightSpec& omega2,
                                     const KernelBuildSpec& spec1, const KernelBuildSpec& spec2,
                                     bool use_full_domains,
                                     const std::map<std::size_t, IntVec>& b_overrides,
                                     const KernelBuilder& builder) {
    GroupData G = GroupData::build(A);
    if (D1.dim() != G.dim() || D2.dim() != G.dim())
        throw ArgumentError("build_scenario: domain dimension does not match A");
    const KernelBuilder make =
        builder ? builder
                : KernelBuilder([](const ReinhardtDomain& D, const WeightSpec& w,
                                   const KernelBuildSpec& s) { return bergman::build_kernel(D, w, s); });
    WeightSpec omega1 = domains::pullback_weight(omega2, A);
    const ReinhardtDomain K1dom = use_full_domains ? D1 : D1.with_axes_deleted(true);
    const ReinhardtDomain K2dom = use_full_domains ? D2 : D2.with_axes_deleted(true);
    if (use_full_domains && !domains::is_admissible(omega1, D1))
        throw ArgumentError("build_scenario: omega1 is not admissible on D1 in full-domain mode");

    KernelSeries K1 = use_full_domains ? make(K1dom, omega1, spec1)
                                       : build_star_kernel(K1dom, omega1, spec1, make);
    std::vector<CharacterBlock> blocks;
    blocks.reserve(G.char_reps().size());
    for (std::size_t i = 0; i < G.char_reps().size(); ++i) {
        const IntVec& b_star = G.char_reps()[i];
        IntVec b;
        if (auto it = b_overrides.find(i); it != b_overrides.end()) {
            b = it->second;
            if (!G.same_char_coset(b, b_star))
                throw ArgumentError("build_scenario: override b is not in the character coset");
        } else {
            b = domains::admissible_representative(G, b_star, omega2, D2);
        }
        WeightSpec eta = domains::eta_weight(b, A, omega2);
        if (use_full_domains && !domains::is_admissible(eta, D2))
            throw ArgumentError("build_scenario: eta_b is not admissible on D2 in full-domain mode");
        KernelSeries Kb = use_full_domains ? make(K2dom, eta, spec2)
                                           : build_star_kernel(K2dom, eta, spec2, make);
        blocks.push_back(CharacterBlock{b_star, std::move(b), eta, std::move(Kb)});
    }
    return DecompositionScenario{std::move(G),  D1, D2,      std::move(omega1),
                                 omega2,        use_full_domains,
                                 std::move(K1), std::move(blocks)};
}

GeometryReport validate_geometry(const DecompositionScenario& S, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    const int n = S.D1.dim();
    std::vector<double> cap(n);
    for (int j = 0; j < n; ++j) {
        const double s = S.D1.sup_radius(j);
        cap[j] = std::isfinite(s) ? 0.97 * s : 2.0; // unbounded axes probed in a window
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    int accepted = 0;
    long tries = 0;
    while (accepted < samples) {
        if (++tries > 2000L * samples + 1000)
            throw NumericError("validate_geometry: rejection sampling failed to fill the quota");
        std::vector<double> r(n), rmargin(n);
        for (int j = 0; j < n; ++j) {
            r[j] = 0.05 + (cap[j] - 0.05) * unif(rng);
            rmargin[j] = 1.02 * r[j];
        }
        // The inflated point must also fit, so r is interior with a margin
        // that dwarfs round-off in the containment checks below.
        if (!S.D1.shadow_contains(r) || !S.D1.shadow_contains(rmargin)) continue;
        CVec z(n);
        for (int j = 0; j < n; ++j) z[j] = std::polar(r[j], ang(rng));
        const CVec w = monomial::eval_Phi(S.G.A(), z);
        if (!S.D2.contains(w))
            throw NumericError("validate_geometry: forward image left D2");
        for (const auto& m : S.G.reps())
            if (!S.D1.contains(monomial::action_apply(S.G, m, z)))
                throw NumericError("validate_geometry: group orbit left D1");
        for (const auto& p : monomial::fiber(S.G, w))
            if (!S.D1.contains(p))
                throw NumericError("validate_geometry: fiber point left D1");
        ++accepted;
    }
    return GeometryReport{samples};
}

double DecompEval::residual() const { return std::abs(lhs - rhs); }
double DecompEval::relative() const { return residual() / std::max(std::abs(lhs), 1e-300); }

DecompEval decomposition_eval(const DecompositionScenario& S, const CVec& z, const CVec& w,
                              bool raw) {
    const CVec pz = monomial::eval_Phi(S.G.A(), z);
    const CVec pw = monomial::eval_Phi(S.G.A(), w);
    DecompEval ev;
    ev.lhs = raw ? S.K1.eval_raw(z, w) : S.K1.eval(z, w);
    ev.terms.reserve(S.blocks.size());
    for (const auto& blk : S.blocks) {
        const std::complex<double> inner =
            raw ? blk.kernel.eval_raw(pz, pw) : blk.kernel.eval(pz, pw);
        const std::complex<double> term =
            outer_factor(blk.b, z) * inner * std::conj(outer_factor(blk.b, w));
        ev.terms.push_back(term);
        ev.rhs += term;
    }
    return ev;
}

double DiagEval::rhs() const {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}
double DiagEval::residual() const { return std::abs(lhs - rhs()); }
double DiagEval::relative() const { return residual() / std::max(std::abs(lhs), 1e-300); }

DiagEval diagonal_eval(const DecompositionScenario& S, const CVec& z, bool raw) {
    const CVec pz = monomial::eval_Phi(S.G.A(), z);
    DiagEval ev;
    ev.lhs = raw ? S.K1.diag_raw(z) : S.K1.diag(z);
    ev.terms.reserve(S.blocks.size());
    for (const auto& blk : S.blocks) {
        const double inner = raw ? blk.kernel.diag_raw(pz) : blk.kernel.diag(pz);
        const double term = std::norm(outer_factor(blk.b, z)) * inner;
        if (term < 0.0)
            throw NumericError("diagonal_eval: negative character term");
        ev.terms.push_back(term);
    }
    return ev;
}

CorollaryEval corollary_inequality(const DecompositionScenario& S, const KernelSeries& K1_full,
                                   const CVec& z, bool raw) {
    CorollaryEval ev;
    ev.lhs = raw ? K1_full.diag_raw(z) : K1_full.diag(z);
    ev.rhs = diagonal_eval(S, z, raw).rhs();
    return ev;
}

double FiberEval::residual() const { return std::abs(lhs - rhs); }
double FiberEval::relative() const {
    return residual() / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

FiberEval bell_fiber_eval(const GroupData& G, const KernelSeries& K1, const KernelSeries& K2,
                          const CVec& z, const CVec& v, bool raw) {
    FiberEval ev;
    for (const auto& p : monomial::fiber(G, v)) {
        const std::complex<double> jp = monomial::jacobian_det(G.A(), p);
        const std::complex<double> k1 = raw ? K1.eval_raw(z, p) : K1.eval(z, p);
        ev.lhs += k1 * std::conj(1.0 / jp);
    }
    const CVec pz = monomial::eval_Phi(G.A(), z);
    const std::complex<double> k2 = raw ? K2.eval_raw(pz, v) : K2.eval(pz, v);
    ev.rhs = monomial::jacobian_det(G.A(), z) * k2;
    return ev;
}

BallEstimate monomial_ball_estimate(const Rat& d1, const Rat& d2, const Rat& d3,
                                    const KernelBuildSpec& spec) {
    if (!(d1 > Rat(3, 2)) || !(d2 > Rat(3, 2)) || !(d3 > Rat(0)) || !(d3 < Rat(1, 2)))
        throw ArgumentError("monomial_ball_estimate: need d1, d2 > 3/2 and 0 < d3 < 1/2");
    const auto A = intlin::IntMatrix::from_rows({{1, 1}, {0, 1}});
    // Pull the product model (disk of radius d3 about 1) x (annulus 1/d1, d2)
    // back through (z1, z2) -> (z1 z2, z2): the Jacobian at (1,1) is 1 and
    // the weight transform of the trivial weight is eta with mu = (0, -1).
    const WeightSpec eta = domains::eta_weight(IntVec{Int(0), Int(0)}, A, WeightSpec::trivial(2));
    Rat inner = Rat(1) / d1;
    inner.canonicalize();
    const auto W = ReinhardtDomain::product({{inner, d2, false}});
    const WeightSpec wann{{eta.mu[1]}, eta.scale};
    const KernelSeries K = bergman::build_kernel(W, wann, spec);

    BallEstimate est;
    const double d3d = to_double(d3);
    const double disk_factor = 1.0 / (kPi * d3d * d3d);
    est.computed = disk_factor * K.diag(CVec{std::complex<double>(1.0, 0.0)});

    // Same value from the unweighted annulus closed forms: the index shift
    // k -> k+1 matches the two orthogonal families at the evaluation radius 1.
    const double rm = to_double(inner), rp = to_double(d2);
    double diag = 1.0 / (2.0 * kPi * std::log(rp / rm));
    for (int dir : {+1, -1}) {
        for (long k = (dir > 0 ? 0 : -2);; k += dir) {
            const double t =
                (k + 1.0) / (kPi * (std::pow(rp, 2.0 * k + 2.0) - std::pow(rm, 2.0 * k + 2.0)));
            diag += t;
            if (std::abs(t) < 1e-17 * diag || std::abs(k) > 100000) break;
        }
    }
    est.model = disk_factor * diag;
    est.reference = std::log(to_double(d1 * d2)) / d3d;
    est.ratio = est.computed / est.reference;
    return est;
}

CVec sample_validity_point(const ReinhardtDomain& D, const domains::ValidityRegion& V,
                           std::mt19937& rng, double inner) {
    const int n = D.dim();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::vector<double> r(n);
    if (!V.constraint_space) {
        for (int j = 0; j < n; ++j) {
            const double lo = std::max(V.lo[j], inner * V.hi[j]);
            const double hi = V.hi[j] - inner * (V.hi[j] - V.lo[j]);
            r[j] = lo + (hi - lo) * unif(rng);
        }
    } else if (D.kind() == ReinhardtDomain::Kind::ellipsoid) {
        // Draw a direction, then scale it onto a target sub-level value.
        const auto& p = D.as_ellipsoid().p;
        const double cap = V.hi[0];
        const double target = cap * (0.2 + (0.8 - inner) * unif(rng));
        for (int j = 0; j < n; ++j) r[j] = 0.3 + 0.7 * unif(rng);
        double lo = 0.0, hi = 4.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += std::pow(mid * r[j], 2.0 * static_cast<double>(p[j]));
            (s < target ? lo : hi) = mid;
        }
        for (int j = 0; j < n; ++j) r[j] *= 0.5 * (lo + hi);
    } else {
        // Constraint-space bands: draw each band coordinate, then map back
        // through the inverse exponent matrix.
        const auto& P = D.as_monomial();
        const auto& Pinv = D.monomial_inverse();
        const int d = static_cast<int>(P.rows.size());
        std::vector<double> logu(d);
        for (int i = 0; i < d; ++i) {
            const double lo = V.lo[i] + inner * (V.hi[i] - V.lo[i]);
            const double hi = V.hi[i] - inner * (V.hi[i] - V.lo[i]);
            logu[i] = std::log(lo + (hi - lo) * unif(rng));
        }
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += to_double(Pinv.at(j, i)) * logu[i];
            r[j] = std::exp(s);
        }
    }
    CVec z(n);
    for (int j = 0; j < n; ++j) z[j] = std::polar(r[j], ang(rng));
    return z;
}

DecompositionScenario make_example_scenario(const std::string& name, const KernelBuildSpec& spec1,
                                            const KernelBuildSpec& spec2) {
    using intlin::IntMatrix;
    if (name == "disk_z2") {
        return build_scenario(IntMatrix::from_rows({{2}}), ReinhardtDomain::disk(Rat(1)),
                              ReinhardtDomain::disk(Rat(1)), WeightSpec::trivial(1), spec1, spec2);
    }
    if (name == "ellipsoid_p2q2") {
        return build_scenario(IntMatrix::from_rows({{2, 0}, {0, 2}}),
                              ReinhardtDomain::ellipsoid({2, 2}), ReinhardtDomain::ellipsoid({1, 1}),
                              WeightSpec::trivial(2), spec1, spec2);
    }
    if (name == "hartogs_p1q1" || name == "hartogs_p2q1") {
        const long p = (name == "hartogs_p1q1") ? 1 : 2;
        std::vector<IntVec> rows{IntVec{Int(p), Int(-1)}, IntVec{Int(0), Int(1)}};
        auto D1 = ReinhardtDomain::monomial_region(rows, RatVec{Rat(0), Rat(0)},
                                                   RatVec{Rat(1), Rat(1)});
        return build_scenario(IntMatrix::from_rows({{p, -1}, {0, 1}}), D1,
                              ReinhardtDomain::polydisk(RatVec{Rat(1), Rat(1)}),
                              WeightSpec::trivial(2), spec1, spec2);
    }
    if (name == "remark2_bidisk") {
        std::vector<IntVec> rows{IntVec{Int(1), Int(1)}, IntVec{Int(0), Int(1)}};
        auto D1 = ReinhardtDomain::monomial_region(rows, RatVec{Rat(0), Rat(0)},
                                                   RatVec{Rat(1), Rat(1)});
        WeightSpec w2{RatVec{Rat(0), Rat(3)}, Rat(1)};
        // Pin b = 0 so eta stays at the classical |w2|^4; in axes-deleted
        // mode any coset representative yields the same right side.
        std::map<std::size_t, IntVec> pin;
        pin[0] = IntVec{Int(0), Int(0)};
        return build_scenario(IntMatrix::from_rows({{1, 1}, {0, 1}}), D1,
                              ReinhardtDomain::polydisk(RatVec{Rat(1), Rat(1)}), w2, spec1, spec2,
                              /*use_full_domains=*/false, pin);
    }
    throw ArgumentError("unknown example scenario: " + name);
}

std::vector<std::string> example_scenario_names() {
    return {"disk_z2", "ellipsoid_p2q2", "hartogs_p1q1", "hartogs_p2q1", "remark2_bidisk"};
}

} // namespace bergdecomp::identities
