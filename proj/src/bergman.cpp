#include "bergdecomp/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::bergman {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shell of the index lattice at sup-norm s: k_j >= 0 where the axis meets the
// domain, two-sided otherwise.
std::vector<std::vector<long>> lattice_shell(const ReinhardtDomain& D, long s) {
    const int n = D.dim();
    std::vector<long> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        hi[j] = s;
        lo[j] = D.axis_meets(j) ? 0 : -s;
    }
    std::vector<std::vector<long>> out;
    std::vector<long> k(lo);
    for (;;) {
        long m = 0;
        for (int j = 0; j < n; ++j) m = std::max(m, std::labs(k[j]));
        if (m == s) out.push_back(k);
        int j = n - 1;
        while (j >= 0 && ++k[j] > hi[j]) {
            k[j] = lo[j];
            --j;
        }
        if (j < 0) break;
    }
    return out;
}

} // namespace

NormValue monomial_norm(const ReinhardtDomain& D, const WeightSpec& w,
                        const std::vector<long>& k) {
    const int n = D.dim();
    if (w.dim() != n || static_cast<int>(k.size()) != n)
        throw ArgumentError("monomial_norm: dimension mismatch");
    RatVec a(n);
    for (int j = 0; j < n; ++j) {
        a[j] = 2 * w.mu[j] + Rat(2 * k[j] + 1);
        a[j].canonicalize();
    }
    auto ri = D.radial_power_integral(a);
    NormValue nv;
    nv.finite = ri.finite;
    if (!ri.finite) return nv;
    nv.value = to_double(w.scale) * std::pow(2.0 * kPi, n) * ri.value;
    if (ri.exact) {
        Rat q = w.scale * *ri.exact;
        mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(), n);
        q.canonicalize();
        nv.exact = q;
        nv.value = to_double(q) * std::pow(kPi, n);
    }
    return nv;
}

KernelSeries::KernelSeries(ReinhardtDomain domain, WeightSpec weight, ValidityRegion validity)
    : domain_(std::move(domain)), weight_(std::move(weight)), validity_(std::move(validity)) {
    kmin_.assign(domain_.dim(), 0);
    kmax_.assign(domain_.dim(), 0);
}

void KernelSeries::set_term(const std::vector<long>& k, Coeff c) {
    for (int j = 0; j < domain_.dim(); ++j) {
        kmin_[j] = std::min(kmin_[j], k[j]);
        kmax_[j] = std::max(kmax_[j], k[j]);
    }
    terms_[k] = std::move(c);
}

void KernelSeries::set_truncation(long degree, double tail) {
    truncation_degree_ = degree;
    tail_bound_ = tail;
}

void KernelSeries::check_point(const CVec& z) const {
    if (!domain_.contains(z)) throw EvalDomainError("kernel eval: point outside the domain");
    if (!domains::validity_contains(domain_, validity_, z))
        throw EvalDomainError("kernel eval: point outside the certified validity region");
}

std::complex<double> KernelSeries::eval(const CVec& z, const CVec& w) const {
    check_point(z);
    check_point(w);
    return eval_raw(z, w);
}

std::complex<double> KernelSeries::eval_raw(const CVec& z, const CVec& w) const {
    const int n = domain_.dim();
    std::vector<std::vector<std::complex<double>>> pos(n), neg(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> u = z[j] * std::conj(w[j]);
        pos[j].resize(kmax_[j] + 1);
        pos[j][0] = 1.0;
        for (long t = 1; t <= kmax_[j]; ++t) pos[j][t] = pos[j][t - 1] * u;
        if (kmin_[j] < 0) {
            if (std::abs(u) == 0.0)
                throw EvalDomainError("kernel eval: negative powers need nonzero coordinates");
            std::complex<double> v = 1.0 / u;
            neg[j].resize(-kmin_[j] + 1);
            neg[j][0] = 1.0;
            for (long t = 1; t <= -kmin_[j]; ++t) neg[j][t] = neg[j][t - 1] * v;
        }
    }
    std::complex<double> acc{};
    for (const auto& [k, c] : terms_) {
        std::complex<double> term = c.value;
        for (int j = 0; j < n; ++j) term *= k[j] >= 0 ? pos[j][k[j]] : neg[j][-k[j]];
        acc += term;
    }
    return acc;
}

double KernelSeries::diag(const CVec& z) const {
    check_point(z);
    return diag_raw(z);
}

double KernelSeries::diag_raw(const CVec& z) const {
    const int n = domain_.dim();
    std::vector<std::vector<double>> pos(n), neg(n);
    for (int j = 0; j < n; ++j) {
        double u = std::norm(z[j]);
        pos[j].resize(kmax_[j] + 1);
        pos[j][0] = 1.0;
        for (long t = 1; t <= kmax_[j]; ++t) pos[j][t] = pos[j][t - 1] * u;
        if (kmin_[j] < 0) {
            if (u == 0.0)
                throw EvalDomainError("kernel eval: negative powers need nonzero coordinates");
            neg[j].resize(-kmin_[j] + 1);
            neg[j][0] = 1.0;
            for (long t = 1; t <= -kmin_[j]; ++t) neg[j][t] = neg[j][t - 1] / u;
        }
    }
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        double term = c.value;
        for (int j = 0; j < n; ++j) term *= k[j] >= 0 ? pos[j][k[j]] : neg[j][-k[j]];
        acc += term;
    }
    return acc;
}

KernelSeries build_kernel(const ReinhardtDomain& D, const WeightSpec& w,
                          const KernelBuildSpec& spec) {
    if (w.dim() != D.dim()) throw ArgumentError("build_kernel: dimension mismatch");
    if (!(w.scale > 0)) throw ArgumentError("build_kernel: weight scale must be positive");
    ValidityRegion V =
        spec.validity ? *spec.validity : domains::default_validity(D, spec.validity_scale);
    KernelSeries K(D, w, V);

    double prev_bound = std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    int quiet = 0;
    for (long s = 0;; ++s) {
        if (s > spec.max_degree)
            throw ResourceCapError("build_kernel: tail not certified below max_degree " +
                                   std::to_string(spec.max_degree));
        auto shell = lattice_shell(D, s);
        std::vector<NormValue> norms(shell.size());
        const bool par = spec.policy == quadrature::RunPolicy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
        for (long i = 0; i < static_cast<long>(shell.size()); ++i)
            norms[i] = monomial_norm(D, w, shell[i]);
        (void)par;

        double bound = 0.0;
        bool kept = false;
        for (size_t i = 0; i < shell.size(); ++i) {
            if (!norms[i].finite) continue; // divergent norm: basis element drops out
            Coeff c;
            c.value = 1.0 / norms[i].value;
            if (norms[i].exact) c.exact = Rat(1) / *norms[i].exact;
            double sup = domains::sup_abs_monomial(D, V, shell[i]);
            if (std::isinf(sup))
                throw ArgumentError(
                    "build_kernel: validity region touches an axis carrying negative powers; "
                    "pass a band bounded away from it");
            bound += c.value * sup * sup;
            kept = true;
            K.set_term(shell[i], std::move(c));
        }

        // Shells with no surviving term are inconclusive: the finiteness
        // threshold may simply not be reached yet (heavy negative weights).
        if (!kept) continue;
        if (bound <= spec.tail_tol) {
            ratio = std::min(0.95, std::max(ratio, bound / std::max(prev_bound, 1e-300)));
            if (++quiet >= 3) {
                K.set_truncation(s, bound * ratio / (1.0 - ratio));
                return K;
            }
        } else {
            quiet = 0;
            ratio = 0.0;
        }
        prev_bound = bound;
    }
}

} // namespace bergdecomp::bergman
