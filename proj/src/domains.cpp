#include "bergdecomp/domains.hpp"

#include <cmath>
#include <limits>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::domains {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_rd(double base, const Rat& e) {
    if (e == 0) return 1.0;
    if (base == 0.0) return e > 0 ? 0.0 : kInf;
    return std::exp(to_double(e) * std::log(base));
}

bool fits_long(const Rat& q) {
    return is_integer(q) && q.get_num().fits_slong_p();
}

} // namespace

ReinhardtDomain ReinhardtDomain::product(std::vector<RadialFactor> factors, bool axes_deleted) {
    if (factors.empty()) throw ArgumentError("product domain: no factors");
    for (auto& f : factors) {
        if (f.lo < 0 || f.hi <= f.lo) throw ArgumentError("product domain: need 0 <= lo < hi");
        if (f.punctured && f.lo != 0)
            throw ArgumentError("product domain: puncture only applies to a disk factor");
    }
    ReinhardtDomain D;
    D.n_ = static_cast<int>(factors.size());
    D.axes_deleted_ = axes_deleted;
    D.shape_ = ProductShape{std::move(factors)};
    return D;
}

ReinhardtDomain ReinhardtDomain::disk(const Rat& radius, bool axes_deleted) {
    return product({RadialFactor{Rat(0), radius, false}}, axes_deleted);
}

ReinhardtDomain ReinhardtDomain::polydisk(const RatVec& radii, bool axes_deleted) {
    std::vector<RadialFactor> fs;
    for (const auto& r : radii) fs.push_back(RadialFactor{Rat(0), r, false});
    return product(std::move(fs), axes_deleted);
}

ReinhardtDomain ReinhardtDomain::ellipsoid(std::vector<long> p, bool axes_deleted) {
    if (p.empty()) throw ArgumentError("ellipsoid domain: empty exponents");
    for (long e : p)
        if (e < 1) throw ArgumentError("ellipsoid domain: exponents must be >= 1");
    ReinhardtDomain D;
    D.n_ = static_cast<int>(p.size());
    D.axes_deleted_ = axes_deleted;
    D.shape_ = EllipsoidShape{std::move(p)};
    return D;
}

ReinhardtDomain ReinhardtDomain::monomial_region(std::vector<IntVec> rows, RatVec lo, RatVec hi,
                                                 bool axes_deleted) {
    const int n = static_cast<int>(rows.size());
    if (n == 0 || lo.size() != rows.size() || hi.size() != rows.size())
        throw ArgumentError("monomial domain: need one (lo,hi,row) triple per dimension");
    std::vector<Int> entries;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw ArgumentError("monomial domain: ragged rows");
        for (const auto& x : r) entries.push_back(x);
    }
    IntMatrix P(n, std::move(entries)); // rejects singular constraint matrices
    for (int i = 0; i < n; ++i) {
        if (lo[i] < 0 || hi[i] <= lo[i])
            throw ArgumentError("monomial domain: need 0 <= lo < hi per constraint");
    }
    ReinhardtDomain D;
    D.n_ = n;
    D.axes_deleted_ = axes_deleted;
    D.shape_ = MonomialShape{std::move(rows), std::move(lo), std::move(hi)};
    D.mono_inv_ = intlin::rational_inverse(P);
    D.mono_det_abs_ = Rat(abs(P.det()));
    return D;
}

ReinhardtDomain ReinhardtDomain::with_axes_deleted(bool deleted) const {
    ReinhardtDomain D = *this;
    D.axes_deleted_ = deleted;
    return D;
}

ReinhardtDomain::Kind ReinhardtDomain::kind() const {
    if (std::holds_alternative<ProductShape>(shape_)) return Kind::product;
    if (std::holds_alternative<EllipsoidShape>(shape_)) return Kind::ellipsoid;
    return Kind::monomial;
}

const ProductShape& ReinhardtDomain::as_product() const { return std::get<ProductShape>(shape_); }
const EllipsoidShape& ReinhardtDomain::as_ellipsoid() const { return std::get<EllipsoidShape>(shape_); }
const MonomialShape& ReinhardtDomain::as_monomial() const { return std::get<MonomialShape>(shape_); }
const RatMatrix& ReinhardtDomain::monomial_inverse() const {
    if (!mono_inv_) throw ArgumentError("monomial_inverse: not a monomial-region domain");
    return *mono_inv_;
}

bool ReinhardtDomain::shadow_contains(const std::vector<double>& r) const {
    if (static_cast<int>(r.size()) != n_) throw ArgumentError("shadow_contains: dimension mismatch");
    for (double x : r)
        if (x < 0.0 || !std::isfinite(x)) return false;
    if (axes_deleted_)
        for (double x : r)
            if (x == 0.0) return false;

    switch (kind()) {
        case Kind::product: {
            const auto& fs = as_product().factors;
            for (int j = 0; j < n_; ++j) {
                if (fs[j].punctured && r[j] == 0.0) return false;
                double lo = to_double(fs[j].lo), hi = to_double(fs[j].hi);
                if (lo > 0.0 ? !(lo < r[j] && r[j] < hi) : !(r[j] < hi)) return false;
            }
            return true;
        }
        case Kind::ellipsoid: {
            const auto& p = as_ellipsoid().p;
            double acc = 0.0;
            for (int j = 0; j < n_; ++j) acc += std::pow(r[j], 2.0 * p[j]);
            return acc < 1.0;
        }
        case Kind::monomial: {
            const auto& ms = as_monomial();
            for (int i = 0; i < n_; ++i) {
                double f = 1.0;
                bool zero = false, inf = false;
                for (int j = 0; j < n_; ++j) {
                    long e = ms.rows[i][j].get_si();
                    if (e == 0) continue;
                    if (r[j] == 0.0) {
                        (e > 0 ? zero : inf) = true;
                    } else {
                        f *= std::pow(r[j], static_cast<double>(e));
                    }
                }
                if (inf) return false;
                double val = zero ? 0.0 : f;
                double lo = to_double(ms.lo[i]), hi = to_double(ms.hi[i]);
                if (lo > 0.0 ? !(lo < val && val < hi) : !(val < hi)) return false;
            }
            return true;
        }
    }
    return false;
}

bool ReinhardtDomain::contains(const CVec& z) const {
    if (static_cast<int>(z.size()) != n_) throw ArgumentError("contains: dimension mismatch");
    std::vector<double> r(z.size());
    for (size_t j = 0; j < z.size(); ++j) r[j] = std::abs(z[j]);
    return shadow_contains(r);
}

double ReinhardtDomain::sup_radius(int j) const {
    switch (kind()) {
        case Kind::product:
            return to_double(as_product().factors[j].hi);
        case Kind::ellipsoid:
            return 1.0;
        case Kind::monomial: {
            const auto& ms = as_monomial();
            const auto& inv = *mono_inv_;
            double acc = 0.0;
            for (int i = 0; i < n_; ++i) {
                double c = to_double(inv.at(j, i));
                if (c == 0.0) continue;
                if (c > 0.0) {
                    acc += c * std::log(to_double(ms.hi[i]));
                } else {
                    if (ms.lo[i] == 0) return kInf;
                    acc += c * std::log(to_double(ms.lo[i]));
                }
            }
            return std::exp(acc);
        }
    }
    return kInf;
}

double ReinhardtDomain::inf_radius(int j) const {
    switch (kind()) {
        case Kind::product: {
            return to_double(as_product().factors[j].lo);
        }
        case Kind::ellipsoid:
            return 0.0;
        case Kind::monomial: {
            const auto& ms = as_monomial();
            const auto& inv = *mono_inv_;
            double acc = 0.0;
            for (int i = 0; i < n_; ++i) {
                double c = to_double(inv.at(j, i));
                if (c == 0.0) continue;
                if (c > 0.0) {
                    if (ms.lo[i] == 0) return 0.0;
                    acc += c * std::log(to_double(ms.lo[i]));
                } else {
                    acc += c * std::log(to_double(ms.hi[i]));
                }
            }
            return std::exp(acc);
        }
    }
    return 0.0;
}

bool ReinhardtDomain::bounded() const {
    for (int j = 0; j < n_; ++j)
        if (!std::isfinite(sup_radius(j))) return false;
    return true;
}

bool ReinhardtDomain::axis_meets(int j) const {
    if (axes_deleted_) return false;
    switch (kind()) {
        case Kind::product: {
            const auto& f = as_product().factors[j];
            return !f.punctured && f.lo == 0;
        }
        case Kind::ellipsoid:
            return true;
        case Kind::monomial: {
            // The slice {r_j = 0} is nonempty iff no constraint blows up there
            // (P(i,j) < 0) and every constraint vanishing there (P(i,j) > 0) is
            // one-sided.  The residual system on the other coordinates is always
            // feasible: rows with P(i,j) = 0 stay independent after dropping j.
            // Note this is stronger than inf_radius(j) == 0; the Hartogs triangle
            // has inf r_2 = 0 but never touches the z_2 axis.
            const auto& ms = as_monomial();
            for (int i = 0; i < n_; ++i) {
                if (ms.rows[i][j] < 0) return false;
                if (ms.rows[i][j] > 0 && ms.lo[i] != 0) return false;
            }
            return true;
        }
    }
    return false;
}

ReinhardtDomain::RadialIntegral ReinhardtDomain::radial_power_integral(const RatVec& a) const {
    if (static_cast<int>(a.size()) != n_)
        throw ArgumentError("radial_power_integral: dimension mismatch");
    RadialIntegral out;
    switch (kind()) {
        case Kind::product: {
            double value = 1.0;
            Rat exact(1);
            bool have_exact = true;
            for (int j = 0; j < n_; ++j) {
                const auto& f = as_product().factors[j];
                Rat e1 = a[j] + 1;
                e1.canonicalize();
                if (f.lo == 0) {
                    if (e1 <= 0) return out; // divergent at the axis
                    value *= pow_rd(to_double(f.hi), e1) / to_double(e1);
                    if (fits_long(e1) && have_exact)
                        exact *= rat_pow(f.hi, e1.get_num().get_si()) / e1;
                    else
                        have_exact = false;
                } else if (e1 == 0) {
                    value *= std::log(to_double(f.hi) / to_double(f.lo));
                    have_exact = false;
                } else {
                    value *= (pow_rd(to_double(f.hi), e1) - pow_rd(to_double(f.lo), e1)) / to_double(e1);
                    if (fits_long(e1) && have_exact) {
                        long e = e1.get_num().get_si();
                        exact *= (rat_pow(f.hi, e) - rat_pow(f.lo, e)) / e1;
                    } else {
                        have_exact = false;
                    }
                }
            }
            out.finite = true;
            out.value = value;
            if (have_exact) {
                exact.canonicalize();
                out.exact = exact;
                out.value = to_double(exact);
            }
            return out;
        }
        case Kind::ellipsoid: {
            const auto& p = as_ellipsoid().p;
            RatVec alpha(n_);
            Rat asum(0);
            bool all_int = true;
            for (int j = 0; j < n_; ++j) {
                alpha[j] = (a[j] + 1) / Rat(2 * p[j]);
                alpha[j].canonicalize();
                if (alpha[j] <= 0) return out;
                asum += alpha[j];
                all_int = all_int && fits_long(alpha[j]);
            }
            asum.canonicalize();
            double lg = 0.0;
            for (int j = 0; j < n_; ++j) {
                lg += std::lgamma(to_double(alpha[j]));
                lg -= std::log(2.0 * p[j]);
            }
            lg -= std::lgamma(1.0 + to_double(asum));
            out.finite = true;
            out.value = std::exp(lg);
            if (all_int) {
                Int num(1);
                for (int j = 0; j < n_; ++j) {
                    Int f;
                    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(alpha[j].get_num().get_si() - 1));
                    num *= f;
                }
                Int den;
                mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(Rat(asum).get_num().get_si()));
                Rat exact(num, den);
                for (int j = 0; j < n_; ++j) exact /= Rat(2 * p[j]);
                exact.canonicalize();
                out.exact = exact;
                out.value = to_double(exact);
            }
            return out;
        }
        case Kind::monomial: {
            const auto& ms = as_monomial();
            const auto& inv = *mono_inv_;
            // In log coordinates the shadow is a box in y_i = <row_i, log r>;
            // the integrand exponent transforms to g = (a + 1) * P^{-1}.
            RatVec g(n_, Rat(0));
            for (int i = 0; i < n_; ++i) {
                for (int j = 0; j < n_; ++j) g[i] += (a[j] + 1) * inv.at(j, i);
                g[i].canonicalize();
            }
            double value = 1.0;
            Rat exact(1);
            bool have_exact = true;
            for (int i = 0; i < n_; ++i) {
                if (ms.lo[i] == 0) {
                    if (g[i] <= 0) return out;
                    value *= pow_rd(to_double(ms.hi[i]), g[i]) / to_double(g[i]);
                    if (fits_long(g[i]) && have_exact)
                        exact *= rat_pow(ms.hi[i], g[i].get_num().get_si()) / g[i];
                    else
                        have_exact = false;
                } else if (g[i] == 0) {
                    value *= std::log(to_double(ms.hi[i]) / to_double(ms.lo[i]));
                    have_exact = false;
                } else {
                    value *= (pow_rd(to_double(ms.hi[i]), g[i]) - pow_rd(to_double(ms.lo[i]), g[i])) /
                             to_double(g[i]);
                    if (fits_long(g[i]) && have_exact) {
                        long e = g[i].get_num().get_si();
                        exact *= (rat_pow(ms.hi[i], e) - rat_pow(ms.lo[i], e)) / g[i];
                    } else {
                        have_exact = false;
                    }
                }
            }
            out.finite = true;
            out.value = value / to_double(mono_det_abs_);
            if (have_exact) {
                exact /= mono_det_abs_;
                exact.canonicalize();
                out.exact = exact;
                out.value = to_double(exact);
            }
            return out;
        }
    }
    return out;
}

bool ReinhardtDomain::supports_quadrature() const {
    return kind() != Kind::monomial && bounded();
}

std::pair<double, double> ReinhardtDomain::quad_bounds(int pos, const std::vector<double>& outer) const {
    switch (kind()) {
        case Kind::product: {
            const auto& f = as_product().factors[pos];
            return {to_double(f.lo), to_double(f.hi)};
        }
        case Kind::ellipsoid: {
            const auto& p = as_ellipsoid().p;
            double s = 1.0;
            for (int t = 0; t < pos; ++t) s -= std::pow(outer[t], 2.0 * p[t]);
            if (s <= 0.0) return {0.0, 0.0};
            return {0.0, std::pow(s, 1.0 / (2.0 * p[pos]))};
        }
        case Kind::monomial:
            throw ArgumentError("quad_bounds: monomial-region domains use closed forms only");
    }
    return {0.0, 0.0};
}

WeightSpec WeightSpec::trivial(int n) {
    WeightSpec w;
    w.mu.assign(n, Rat(0));
    w.scale = 1;
    return w;
}

double WeightSpec::eval_radial(const std::vector<double>& r) const {
    if (r.size() != mu.size()) throw ArgumentError("weight eval: dimension mismatch");
    double acc = to_double(scale);
    for (size_t j = 0; j < r.size(); ++j) {
        if (mu[j] == 0) continue;
        if (r[j] == 0.0) return mu[j] > 0 ? 0.0 : kInf;
        acc *= std::exp(2.0 * to_double(mu[j]) * std::log(r[j]));
    }
    return acc;
}

double WeightSpec::eval(const CVec& z) const {
    std::vector<double> r(z.size());
    for (size_t j = 0; j < z.size(); ++j) r[j] = std::abs(z[j]);
    return eval_radial(r);
}

RatVec weight_c(const IntVec& b, const IntMatrix& A) {
    const int n = A.dim();
    if (static_cast<int>(b.size()) != n) throw ArgumentError("weight_c: dimension mismatch");
    IntVec one_minus_b(n);
    for (int j = 0; j < n; ++j) one_minus_b[j] = Int(1) - b[j];
    RatVec c = intlin::row_times(one_minus_b, intlin::rational_inverse(A));
    for (auto& q : c) {
        q -= 1;
        q.canonicalize();
    }
    return c;
}

WeightSpec eta_weight(const IntVec& b, const IntMatrix& A, const WeightSpec& omega2) {
    if (omega2.dim() != A.dim()) throw ArgumentError("eta_weight: dimension mismatch");
    RatVec c = weight_c(b, A);
    WeightSpec eta;
    eta.mu.resize(c.size());
    for (size_t j = 0; j < c.size(); ++j) {
        eta.mu[j] = c[j] + omega2.mu[j];
        eta.mu[j].canonicalize();
    }
    eta.scale = omega2.scale / Rat(abs(A.det()));
    eta.scale.canonicalize();
    return eta;
}

WeightSpec pullback_weight(const WeightSpec& omega2, const IntMatrix& A) {
    const int n = A.dim();
    if (omega2.dim() != n) throw ArgumentError("pullback_weight: dimension mismatch");
    WeightSpec w1;
    w1.mu.assign(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) w1.mu[j] += omega2.mu[i] * Rat(A.at(i, j));
        w1.mu[j].canonicalize();
    }
    w1.scale = omega2.scale;
    return w1;
}

bool is_admissible(const WeightSpec& w, const ReinhardtDomain& D) {
    if (w.dim() != D.dim()) throw ArgumentError("is_admissible: dimension mismatch");
    for (int j = 0; j < D.dim(); ++j)
        if (D.axis_meets(j) && !(w.mu[j] < Rat(1, 2))) return false;
    return true;
}

IntVec admissible_representative(const GroupData& G, const IntVec& b_star, const WeightSpec& omega2,
                                 const ReinhardtDomain& D2) {
    const int n = G.dim();
    if (static_cast<int>(b_star.size()) != n || omega2.dim() != n || D2.dim() != n)
        throw ArgumentError("admissible_representative: dimension mismatch");
    RatVec c = weight_c(b_star, G.A());
    IntVec m(n, Int(0));
    for (int j = 0; j < n; ++j) {
        if (!D2.axis_meets(j)) continue;
        // Need c(b)_j + mu_j < 1/2 where the shift subtracts m from c.
        Rat x = c[j] + omega2.mu[j] - Rat(1, 2);
        x.canonicalize();
        Int mj = rat_floor(x) + 1;
        if (mj > 0) m[j] = mj;
    }
    IntVec shift = intlin::row_times(m, G.A());
    IntVec b(n);
    for (int j = 0; j < n; ++j) b[j] = b_star[j] + shift[j];
    return b;
}

ValidityRegion default_validity(const ReinhardtDomain& D, double scale) {
    if (!(scale > 0.0 && scale < 1.0))
        throw ArgumentError("default_validity: scale must be in (0,1)");
    ValidityRegion V;
    const int n = D.dim();
    if (D.kind() == ReinhardtDomain::Kind::ellipsoid) {
        // Sub-level band sum_j r_j^(2 p_j) <= scale^2. A per-axis box would
        // stick out near the corners, where the kernel series diverges.
        V.constraint_space = true;
        V.lo.push_back(0.0);
        V.hi.push_back(scale * scale);
        return V;
    }
    if (D.kind() == ReinhardtDomain::Kind::monomial) {
        V.constraint_space = true;
        const auto& ms = D.as_monomial();
        for (int i = 0; i < n; ++i) {
            double hi = to_double(ms.hi[i]);
            double lo = to_double(ms.lo[i]);
            V.hi.push_back(scale * hi);
            V.lo.push_back(lo > 0.0 ? lo / scale : (1.0 - scale) * hi);
            if (!(V.lo[i] < V.hi[i]))
                throw ArgumentError("default_validity: scale leaves an empty band");
        }
        return V;
    }
    for (int j = 0; j < n; ++j) {
        double sup = D.sup_radius(j);
        if (!std::isfinite(sup))
            throw ArgumentError("default_validity: unbounded shadow needs an explicit band");
        double inf = D.inf_radius(j);
        V.hi.push_back(scale * sup);
        V.lo.push_back(inf > 0.0 ? inf / scale : 0.0);
        if (!(V.lo[j] < V.hi[j]))
            throw ArgumentError("default_validity: scale leaves an empty band");
    }
    return V;
}

bool validity_contains(const ReinhardtDomain& D, const ValidityRegion& V, const CVec& z) {
    if (static_cast<int>(z.size()) != D.dim()) throw ArgumentError("validity: dimension mismatch");
    const double eps = 1e-12;
    if (V.constraint_space && D.kind() == ReinhardtDomain::Kind::ellipsoid) {
        const auto& p = D.as_ellipsoid().p;
        double acc = 0.0;
        for (int j = 0; j < D.dim(); ++j) acc += std::pow(std::abs(z[j]), 2.0 * p[j]);
        return acc >= V.lo[0] - eps && acc <= V.hi[0] + eps;
    }
    if (V.constraint_space) {
        const auto& ms = D.as_monomial();
        for (size_t i = 0; i < V.lo.size(); ++i) {
            double f = 1.0;
            for (int j = 0; j < D.dim(); ++j) {
                long e = ms.rows[i][j].get_si();
                if (e == 0) continue;
                double r = std::abs(z[j]);
                if (r == 0.0) return false;
                f *= std::pow(r, static_cast<double>(e));
            }
            if (f < V.lo[i] - eps || f > V.hi[i] + eps) return false;
        }
        return true;
    }
    for (size_t j = 0; j < z.size(); ++j) {
        double r = std::abs(z[j]);
        if (r < V.lo[j] - eps || r > V.hi[j] + eps) return false;
    }
    return true;
}

double sup_abs_monomial(const ReinhardtDomain& D, const ValidityRegion& V,
                        const std::vector<long>& k) {
    const int n = D.dim();
    if (static_cast<int>(k.size()) != n) throw ArgumentError("sup_abs_monomial: dimension mismatch");
    if (V.constraint_space && D.kind() == ReinhardtDomain::Kind::ellipsoid) {
        // max of prod r^k over {sum r^(2p) <= gamma}: weighted AM-GM puts the
        // maximizer at r_j^(2 p_j) = gamma beta_j / S, beta_j = k_j/(2 p_j).
        const auto& p = D.as_ellipsoid().p;
        double S = 0.0;
        for (int j = 0; j < n; ++j) {
            if (k[j] < 0) return kInf; // the band reaches every axis
            S += 0.5 * k[j] / p[j];
        }
        if (S == 0.0) return 1.0;
        double lg = S * std::log(V.hi[0]);
        for (int j = 0; j < n; ++j) {
            double beta = 0.5 * k[j] / p[j];
            if (beta > 0.0) lg += beta * (std::log(beta) - std::log(S));
        }
        return std::exp(lg);
    }
    if (V.constraint_space) {
        // |z^k| = exp(<g, y>) with g = k * P^{-1} over the band box in y.
        const auto& inv = D.monomial_inverse();
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double g = 0.0;
            for (int j = 0; j < n; ++j) g += static_cast<double>(k[j]) * to_double(inv.at(j, i));
            if (g == 0.0) continue;
            if (V.lo[i] <= 0.0 && g < 0.0) return kInf;
            double cand1 = g * std::log(V.hi[i]);
            double cand2 = V.lo[i] > 0.0 ? g * std::log(V.lo[i]) : -kInf;
            acc += std::max(cand1, cand2);
        }
        return std::exp(acc);
    }
    double acc = 1.0;
    for (int j = 0; j < n; ++j) {
        if (k[j] == 0) continue;
        if (k[j] > 0) {
            acc *= std::pow(V.hi[j], static_cast<double>(k[j]));
        } else {
            if (V.lo[j] <= 0.0) return kInf;
            acc *= std::pow(V.lo[j], static_cast<double>(k[j]));
        }
    }
    return acc;
}

} // namespace bergdecomp::domains
