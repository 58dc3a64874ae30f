#include "doctest.h"

#include <random>
#include <vector>

#include "bergdecomp/errors.hpp"
#include "bergdecomp/intlin.hpp"

using namespace bergdecomp;
using namespace bergdecomp::intlin;

namespace {

// Independent oracle: invariant factors from gcds of k x k minors,
// lambda_k = d_k / d_{k-1} with d_k the gcd over all k x k minors.
Int minor_det(const std::vector<std::vector<long>>& a, std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return Int(a[rows[0]][cols[0]]);
    Int acc(0);
    int sign = 1;
    for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> subr(rows.begin() + 1, rows.end());
        std::vector<int> subc;
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != c) subc.push_back(cols[j]);
        acc += sign * Int(a[rows[0]][cols[c]]) * minor_det(a, subr, subc);
        sign = -sign;
    }
    return acc;
}

void combos(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combos(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Int> lambda_oracle(const std::vector<std::vector<long>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<Int> d(n + 1);
    d[0] = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> idx;
        std::vector<int> cur;
        combos(n, k, 0, cur, idx);
        Int g(0);
        for (const auto& r : idx)
            for (const auto& c : idx) {
                Int m = minor_det(a, r, c);
                g = gcd(g, m);
            }
        d[k] = g;
    }
    std::vector<Int> lam(n);
    for (int k = 1; k <= n; ++k) lam[k - 1] = d[k] / d[k - 1];
    return lam;
}

std::vector<std::vector<long>> random_nonsingular(std::mt19937& rng, int n) {
    std::uniform_int_distribution<long> dist(-5, 5);
    for (;;) {
        std::vector<std::vector<long>> a(n, std::vector<long>(n));
        for (auto& row : a)
            for (auto& v : row) v = dist(rng);
        std::vector<int> all;
        for (int i = 0; i < n; ++i) all.push_back(i);
        if (minor_det(a, all, all) != 0) return a;
    }
}

} // namespace

TEST_CASE("smith normal form: frozen examples") {
    auto dec = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(dec.lambda == IntVec{Int(1), Int(6)});

    dec = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 2}}));
    CHECK(dec.lambda == IntVec{Int(2), Int(2)});

    dec = smith_normal_form(IntMatrix::from_rows({{2, -3}, {0, 3}}));
    CHECK(dec.lambda == IntVec{Int(1), Int(6)});

    dec = smith_normal_form(IntMatrix::from_rows({{1}}));
    CHECK(dec.lambda == IntVec{Int(1)});

    dec = smith_normal_form(IntMatrix::from_rows({{2, 0}, {1, 2}}));
    CHECK(dec.lambda == IntVec{Int(1), Int(4)});
}

TEST_CASE("smith normal form: factorization and chain over random matrices") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        auto rows = random_nonsingular(rng, n);
        IntMatrix A = IntMatrix::from_rows(rows);
        auto dec = smith_normal_form(A);

        CHECK(abs(dec.S.det()) == 1);
        CHECK(abs(dec.T.det()) == 1);

        Int prod(1);
        for (const auto& l : dec.lambda) {
            CHECK(l > 0);
            prod *= l;
        }
        CHECK(prod == abs(A.det()));
        for (size_t i = 0; i + 1 < dec.lambda.size(); ++i)
            CHECK(dec.lambda[i + 1] % dec.lambda[i] == 0);

        CHECK(dec.lambda == lambda_oracle(rows));

        // S*A*T == diag(lambda), entry by entry.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Int v(0);
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) v += dec.S.at(i, k) * A.at(k, l) * dec.T.at(l, j);
                CHECK(v == (i == j ? dec.lambda[i] : Int(0)));
            }
    }
}

TEST_CASE("singular matrices are rejected at construction") {
    CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {2, 4}}), ArgumentError);
    CHECK_THROWS_AS(IntMatrix::from_rows({{0}}), ArgumentError);
}

TEST_CASE("rational inverse: frozen example and round trips") {
    IntMatrix A = IntMatrix::from_rows({{2, -3}, {0, 3}});
    RatMatrix inv = rational_inverse(A);
    CHECK(inv.at(0, 0) == Rat(1, 2));
    CHECK(inv.at(0, 1) == Rat(1, 2));
    CHECK(inv.at(1, 0) == Rat(0));
    CHECK(inv.at(1, 1) == Rat(1, 3));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntMatrix M = IntMatrix::from_rows(random_nonsingular(rng, n));
        RatMatrix Minv = rational_inverse(M);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat acc(0);
                for (int k = 0; k < n; ++k) acc += Rat(M.at(i, k)) * Minv.at(k, j);
                acc.canonicalize();
                CHECK(acc == (i == j ? Rat(1) : Rat(0)));
            }
    }
}

TEST_CASE("integer inverse of unimodular factors") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        auto dec = smith_normal_form(IntMatrix::from_rows(random_nonsingular(rng, n)));
        for (const IntMatrix* U : {&dec.S, &dec.T}) {
            IntMatrix Uinv = integer_inverse(*U);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Int acc(0);
                    for (int k = 0; k < n; ++k) acc += U->at(i, k) * Uinv.at(k, j);
                    CHECK(acc == (i == j ? Int(1) : Int(0)));
                }
        }
    }
}

TEST_CASE("in_row_span: brute force agreement in low dimension") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        IntMatrix A = IntMatrix::from_rows(random_nonsingular(rng, n));
        std::uniform_int_distribution<long> vd(-6, 6);
        for (int probe = 0; probe < 20; ++probe) {
            IntVec v(n);
            for (auto& x : v) x = vd(rng);
            // Oracle: search m in a box wide enough to be exhaustive. Any m with
            // v = m*A^t satisfies |m_i| <= n * max|v| * max|(A^t)^{-1}| and the
            // inverse entries are adj/det with |adj| <= (n-1)! * 5^(n-1) <= 5,
            // |det| >= 1, so |m_i| <= 2*6*5 = 60 covers every candidate.
            long B = 60;
            bool found = false;
            if (n == 1) {
                for (long m0 = -B; m0 <= B && !found; ++m0)
                    found = (Int(m0) * A.at(0, 0) == v[0]);
            } else {
                for (long m0 = -B; m0 <= B && !found; ++m0)
                    for (long m1 = -B; m1 <= B && !found; ++m1)
                        found = (Int(m0) * A.at(0, 0) + Int(m1) * A.at(0, 1) == v[0] &&
                                 Int(m0) * A.at(1, 0) + Int(m1) * A.at(1, 1) == v[1]);
            }
            CHECK(in_row_span(A, v) == found);
        }
    }
}

TEST_CASE("in_row_span: harvested members and closure in dimension 3") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<long> md(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix A = IntMatrix::from_rows(random_nonsingular(rng, 3));
        IntMatrix At = A.transpose();
        IntVec m1(3), m2(3);
        for (auto& x : m1) x = md(rng);
        for (auto& x : m2) x = md(rng);
        IntVec v1 = row_times(m1, At), v2 = row_times(m2, At);
        CHECK(in_row_span(A, v1));
        CHECK(in_row_span(A, v2));
        IntVec sum(3);
        for (int i = 0; i < 3; ++i) sum[i] = v1[i] + v2[i];
        CHECK(in_row_span(A, sum));
        // |det A| * e_j is always a member: det * (A^t)^{-1} is integral.
        for (int j = 0; j < 3; ++j) {
            IntVec e(3, Int(0));
            e[j] = abs(A.det());
            CHECK(in_row_span(A, e));
        }
    }
}
