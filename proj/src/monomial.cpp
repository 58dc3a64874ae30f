#include "bergdecomp/monomial.hpp"

#include <cmath>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::monomial {

Exponent Exponent::from_ints(const IntVec& k) {
    Exponent ex;
    ex.e.reserve(k.size());
    for (const auto& x : k) ex.e.emplace_back(x);
    return ex;
}

Exponent Exponent::from_longs(const std::vector<long>& k) {
    Exponent ex;
    ex.e.reserve(k.size());
    for (long x : k) ex.e.emplace_back(x);
    return ex;
}

bool Exponent::integral() const {
    for (const auto& q : e)
        if (!is_integer(q)) return false;
    return true;
}

bool off_axes(const CVec& z) {
    for (const auto& c : z)
        if (c == std::complex<double>(0.0, 0.0)) return false;
    return true;
}

namespace {

std::complex<double> ipow(std::complex<double> base, long e) {
    if (e == 0) return {1.0, 0.0};
    bool neg = e < 0;
    unsigned long ae = static_cast<unsigned long>(neg ? -e : e);
    std::complex<double> acc{1.0, 0.0};
    while (ae) {
        if (ae & 1) acc *= base;
        base *= base;
        ae >>= 1;
    }
    return neg ? 1.0 / acc : acc;
}

} // namespace

std::complex<double> eval_F(const IntVec& b, const CVec& z) {
    if (b.size() != z.size()) throw ArgumentError("eval_F: dimension mismatch");
    std::complex<double> acc{1.0, 0.0};
    for (size_t j = 0; j < b.size(); ++j) {
        long e = b[j].get_si();
        if (e < 0 && z[j] == std::complex<double>(0.0, 0.0))
            throw EvalDomainError("eval_F: negative power of a zero coordinate");
        acc *= ipow(z[j], e);
    }
    return acc;
}

std::complex<double> eval_F(const Exponent& b, const CVec& z) {
    if (b.integral()) {
        IntVec k;
        k.reserve(b.e.size());
        for (const auto& q : b.e) k.push_back(q.get_num());
        return eval_F(k, z);
    }
    std::vector<double> r(z.size());
    for (size_t j = 0; j < z.size(); ++j) {
        if (z[j].imag() != 0.0 || z[j].real() <= 0.0)
            throw EvalDomainError("eval_F: fractional exponents need positive real coordinates");
        r[j] = z[j].real();
    }
    return {eval_F_real(b.e, r), 0.0};
}

double eval_F_real(const RatVec& a, const std::vector<double>& r) {
    if (a.size() != r.size()) throw ArgumentError("eval_F_real: dimension mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        Rat q = a[j];
        q.canonicalize();
        if (q == 0) continue;
        if (r[j] <= 0.0)
            throw EvalDomainError("eval_F_real: nonpositive radius under nonzero exponent");
        acc += to_double(q) * std::log(r[j]);
    }
    return std::exp(acc);
}

CVec eval_Phi(const IntMatrix& A, const CVec& z) {
    const int n = A.dim();
    if (static_cast<int>(z.size()) != n) throw ArgumentError("eval_Phi: dimension mismatch");
    CVec w(n);
    for (int i = 0; i < n; ++i) {
        IntVec row(n);
        for (int j = 0; j < n; ++j) row[j] = A.at(i, j);
        w[i] = eval_F(row, z);
    }
    return w;
}

std::vector<double> eval_Phi_real(const RatMatrix& M, const std::vector<double>& r) {
    const int n = M.dim();
    if (static_cast<int>(r.size()) != n) throw ArgumentError("eval_Phi_real: dimension mismatch");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = eval_F_real(M.row(i), r);
    return out;
}

std::complex<double> jacobian_det(const IntMatrix& A, const CVec& z) {
    const int n = A.dim();
    if (static_cast<int>(z.size()) != n) throw ArgumentError("jacobian_det: dimension mismatch");
    // Column sums of A minus 1 in each slot.
    IntVec e(n);
    for (int j = 0; j < n; ++j) {
        e[j] = -1;
        for (int i = 0; i < n; ++i) e[j] += A.at(i, j);
    }
    return to_double(A.det()) * eval_F(e, z);
}

PolarPoint polar(const CVec& z) {
    PolarPoint p;
    p.r.resize(z.size());
    p.theta.resize(z.size());
    for (size_t j = 0; j < z.size(); ++j) {
        p.r[j] = std::abs(z[j]);
        double t = std::atan2(z[j].imag(), z[j].real()) / (2.0 * M_PI);
        if (t < 0.0) t += 1.0;
        if (t >= 1.0) t -= 1.0;
        p.theta[j] = t;
    }
    return p;
}

CVec from_polar(const std::vector<double>& r, const std::vector<double>& theta) {
    if (r.size() != theta.size()) throw ArgumentError("from_polar: dimension mismatch");
    CVec z(r.size());
    for (size_t j = 0; j < r.size(); ++j)
        z[j] = std::polar(r[j], 2.0 * M_PI * theta[j]);
    return z;
}

CVec action_apply(const GroupData& G, const IntVec& m, const CVec& z) {
    if (static_cast<int>(z.size()) != G.dim()) throw ArgumentError("action_apply: dimension mismatch");
    CVec out(z.size());
    for (int j = 0; j < G.dim(); ++j) out[j] = z[j] * group::xi_phase(G, m, j).value();
    return out;
}

std::vector<CVec> fiber(const GroupData& G, const CVec& w) {
    if (!off_axes(w)) throw EvalDomainError("fiber: target point lies on a coordinate axis");
    PolarPoint pw = polar(w);
    // Principal preimage: radii through Phi_{A^{-1}}, phases through (A^{-1})^t.
    std::vector<double> r0 = eval_Phi_real(G.A_inv(), pw.r);
    const int n = G.dim();
    std::vector<double> th0(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        // (phi * (A^{-1})^t)_j = <phi, row_j(A^{-1})>.
        for (int i = 0; i < n; ++i) acc += pw.theta[i] * to_double(G.A_inv().at(j, i));
        th0[j] = acc - std::floor(acc);
    }
    CVec z0 = from_polar(r0, th0);
    std::vector<CVec> out;
    out.reserve(G.reps().size());
    for (const auto& m : G.reps()) out.push_back(action_apply(G, m, z0));
    return out;
}

} // namespace bergdecomp::monomial
