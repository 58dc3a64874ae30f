#include "bergdecomp/intlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::intlin {

namespace {

Int bareiss_det(int n, std::vector<Int> m) {
    auto at = [&](int i, int j) -> Int& { return m[static_cast<size_t>(i) * n + j]; };
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            int swp = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { swp = i; break; }
            if (swp < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swp, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

} // namespace

IntMatrix::IntMatrix(int n, std::vector<Int> entries) : n_(n), a_(std::move(entries)) {
    if (n_ <= 0 || a_.size() != static_cast<size_t>(n_) * n_)
        throw ArgumentError("IntMatrix: need n*n entries with n >= 1");
    det_ = bareiss_det(n_, a_);
    if (det_ == 0) throw ArgumentError("IntMatrix: singular matrix rejected");
}

IntMatrix IntMatrix::identity(int n) {
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = 1;
    return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<Int> e;
    e.reserve(static_cast<size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw ArgumentError("IntMatrix: ragged rows");
        for (long v : r) e.emplace_back(v);
    }
    return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::transpose() const {
    std::vector<Int> e(a_.size());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) e[static_cast<size_t>(j) * n_ + i] = at(i, j);
    return IntMatrix(n_, std::move(e));
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMatrix::RatMatrix(int n, std::vector<Rat> entries) : n_(n), a_(std::move(entries)) {
    if (n_ <= 0 || a_.size() != static_cast<size_t>(n_) * n_)
        throw ArgumentError("RatMatrix: need n*n entries");
    for (auto& q : a_) q.canonicalize();
}

RatVec RatMatrix::row(int i) const {
    RatVec r(n_);
    for (int j = 0; j < n_; ++j) r[j] = at(i, j);
    return r;
}

std::string RatMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? "," : "") << format_rat(at(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

Int det(const IntMatrix& A) { return A.det(); }

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    const int n = A.dim();
    std::vector<Int> w(static_cast<size_t>(n) * n), s(w.size(), Int(0)), t(w.size(), Int(0));
    auto W = [&](int i, int j) -> Int& { return w[static_cast<size_t>(i) * n + j]; };
    auto S = [&](int i, int j) -> Int& { return s[static_cast<size_t>(i) * n + j]; };
    auto T = [&](int i, int j) -> Int& { return t[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) W(i, j) = A.at(i, j);
    for (int i = 0; i < n; ++i) S(i, i) = T(i, i) = 1;

    // Row ops mirror into S (left factor), column ops into T (right factor),
    // keeping S*A*T == W throughout.
    auto swap_rows = [&](int i1, int i2) {
        if (i1 == i2) return;
        for (int j = 0; j < n; ++j) { std::swap(W(i1, j), W(i2, j)); std::swap(S(i1, j), S(i2, j)); }
    };
    auto swap_cols = [&](int j1, int j2) {
        if (j1 == j2) return;
        for (int i = 0; i < n; ++i) { std::swap(W(i, j1), W(i, j2)); std::swap(T(i, j1), T(i, j2)); }
    };
    auto row_sub = [&](int dst, int src, const Int& q) { // row_dst -= q*row_src
        if (q == 0) return;
        for (int j = 0; j < n; ++j) { W(dst, j) -= q * W(src, j); S(dst, j) -= q * S(src, j); }
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int i = 0; i < n; ++i) { W(i, dst) -= q * W(i, src); T(i, dst) -= q * T(i, src); }
    };
    auto negate_row = [&](int i) {
        for (int j = 0; j < n; ++j) { W(i, j) = -W(i, j); S(i, j) = -S(i, j); }
    };

    for (int step = 0; step < n; ++step) {
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block, ties by
            // lowest row index then lowest column index.
            int pi = -1, pj = -1;
            Int best;
            for (int i = step; i < n; ++i)
                for (int j = step; j < n; ++j) {
                    if (W(i, j) == 0) continue;
                    Int m = abs(W(i, j));
                    if (pi < 0 || m < best) { best = m; pi = i; pj = j; }
                }
            if (pi < 0) throw ArgumentError("smith_normal_form: zero block in nonsingular input");
            swap_rows(step, pi);
            swap_cols(step, pj);

            bool clean = true;
            for (int i = step + 1; i < n; ++i) {
                if (W(i, step) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), W(i, step).get_mpz_t(), W(step, step).get_mpz_t());
                row_sub(i, step, q);
                if (W(i, step) != 0) clean = false;
            }
            for (int j = step + 1; j < n; ++j) {
                if (W(step, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), W(step, j).get_mpz_t(), W(step, step).get_mpz_t());
                col_sub(j, step, q);
                if (W(step, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the rest of the block for the invariant-factor
            // chain; pull a bad row up and retry if not.
            bool divides = true;
            for (int i = step + 1; i < n && divides; ++i)
                for (int j = step + 1; j < n && divides; ++j)
                    if (W(i, j) % W(step, step) != 0) {
                        row_sub(step, i, Int(-1)); // row_step += row_i
                        divides = false;
                    }
            if (divides) break;
        }
        if (W(step, step) < 0) negate_row(step);
    }

    IntVec lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = W(i, i);
    for (int i = 0; i + 1 < n; ++i)
        if (lambda[i + 1] % lambda[i] != 0)
            throw NumericError("smith_normal_form: divisibility chain broken");

    SmithDecomposition dec{IntMatrix(n, std::move(s)), IntMatrix(n, std::move(t)), std::move(lambda)};
    if (abs(dec.S.det()) != 1 || abs(dec.T.det()) != 1)
        throw NumericError("smith_normal_form: non-unimodular factor");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int v(0);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) v += dec.S.at(i, k) * A.at(k, l) * dec.T.at(l, j);
            if (v != (i == j ? dec.lambda[i] : Int(0)))
                throw NumericError("smith_normal_form: S*A*T != diag(lambda)");
        }
    return dec;
}

RatMatrix rational_inverse(const IntMatrix& A) {
    const int n = A.dim();
    std::vector<Rat> m(static_cast<size_t>(n) * 2 * n, Rat(0));
    auto at = [&](int i, int j) -> Rat& { return m[static_cast<size_t>(i) * 2 * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) at(i, j) = Rat(A.at(i, j));
        at(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (at(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw ArgumentError("rational_inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(at(c, j), at(piv, j));
        Rat d = at(c, c);
        for (int j = 0; j < 2 * n; ++j) at(c, j) /= d;
        for (int i = 0; i < n; ++i) {
            if (i == c || at(i, c) == 0) continue;
            Rat f = at(i, c);
            for (int j = 0; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
        }
    }
    std::vector<Rat> inv(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[static_cast<size_t>(i) * n + j] = at(i, n + j);
    return RatMatrix(n, std::move(inv));
}

IntMatrix integer_inverse(const IntMatrix& U) {
    if (abs(U.det()) != 1) throw ArgumentError("integer_inverse: matrix not unimodular");
    RatMatrix r = rational_inverse(U);
    const int n = U.dim();
    std::vector<Int> e(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& q = r.at(i, j);
            if (!is_integer(q)) throw NumericError("integer_inverse: non-integer entry");
            e[static_cast<size_t>(i) * n + j] = q.get_num();
        }
    return IntMatrix(n, std::move(e));
}

bool in_row_span(const IntMatrix& A, const IntVec& v) {
    const int n = A.dim();
    if (static_cast<int>(v.size()) != n) throw ArgumentError("in_row_span: dimension mismatch");
    // v = m * A^t  <=>  m = v * (A^t)^{-1} is integral.
    RatMatrix inv = rational_inverse(A.transpose());
    for (int i = 0; i < n; ++i) {
        Rat mi(0);
        for (int j = 0; j < n; ++j) mi += Rat(v[j]) * inv.at(j, i);
        mi.canonicalize();
        if (!is_integer(mi)) return false;
    }
    return true;
}

RatVec row_times(const RatVec& v, const RatMatrix& M) {
    const int n = M.dim();
    if (static_cast<int>(v.size()) != n) throw ArgumentError("row_times: dimension mismatch");
    RatVec r(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) r[j] += v[i] * M.at(i, j);
        r[j].canonicalize();
    }
    return r;
}

IntVec row_times(const IntVec& v, const IntMatrix& M) {
    const int n = M.dim();
    if (static_cast<int>(v.size()) != n) throw ArgumentError("row_times: dimension mismatch");
    IntVec r(n, Int(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r[j] += v[i] * M.at(i, j);
    return r;
}

RatVec row_times(const IntVec& v, const RatMatrix& M) {
    RatVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return row_times(q, M);
}

std::string format_int_vec(const IntVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace bergdecomp::intlin
