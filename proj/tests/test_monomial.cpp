#include "doctest.h"

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "bergdecomp/errors.hpp"
#include "bergdecomp/monomial.hpp"

using namespace bergdecomp;
using namespace bergdecomp::monomial;
using group::GroupData;
using intlin::IntMatrix;

namespace {

using C = std::complex<double>;

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

CVec random_off_axes(std::mt19937& rng, int n, double rlo = 0.3, double rhi = 1.2) {
    std::uniform_real_distribution<double> rd(rlo, rhi), td(0.0, 1.0);
    CVec z(n);
    for (auto& c : z) c = std::polar(rd(rng), 2.0 * M_PI * td(rng));
    return z;
}

IntMatrix random_nonsingular(std::mt19937& rng, int n, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        std::vector<std::vector<long>> a(n, std::vector<long>(n));
        for (auto& row : a)
            for (auto& v : row) v = dist(rng);
        try {
            return IntMatrix::from_rows(a);
        } catch (const ArgumentError&) {
        }
    }
}

C det_small(const std::vector<std::vector<C>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Central-difference Jacobian determinant, the independent oracle for
// jacobian_det.
C jacobian_fd(const IntMatrix& A, const CVec& z, double h = 1e-5) {
    int n = A.dim();
    std::vector<std::vector<C>> J(n, std::vector<C>(n));
    for (int j = 0; j < n; ++j) {
        CVec zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        CVec fp = eval_Phi(A, zp), fm = eval_Phi(A, zm);
        for (int i = 0; i < n; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return det_small(J);
}

IntMatrix mat_mul(const IntMatrix& X, const IntMatrix& Y) {
    int n = X.dim();
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) e[static_cast<size_t>(i) * n + j] += X.at(i, k) * Y.at(k, j);
    return IntMatrix(n, std::move(e));
}

double dist(const CVec& a, const CVec& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST_CASE("monomial evaluation basics") {
    CVec z{C(2.0, 0.0), C(0.0, 3.0)};
    CHECK(eval_F(iv({2, 1}), z) == C(0.0, 12.0));
    CHECK(eval_F(iv({0, 0}), z) == C(1.0, 0.0));
    CHECK(std::abs(eval_F(iv({-1, 2}), z) - C(-9.0, 0.0) / 2.0) < 1e-14);

    CVec on_axis{C(0.0, 0.0), C(1.0, 0.0)};
    CHECK_THROWS_AS(eval_F(iv({-1, 0}), on_axis), EvalDomainError);
    CHECK(eval_F(iv({2, 0}), on_axis) == C(0.0, 0.0));

    RatVec half{Rat(1, 2), Rat(-1, 2)};
    CHECK(eval_F_real(half, {4.0, 9.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("functoriality of monomial maps") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntMatrix A = random_nonsingular(rng, n, 3);
        IntMatrix B = random_nonsingular(rng, n, 3);
        CVec z = random_off_axes(rng, n);

        // F_{a*A}(z) = F_a(Phi_A(z)).
        std::uniform_int_distribution<long> kd(-3, 3);
        IntVec a(n);
        for (auto& x : a) x = kd(rng);
        C lhs = eval_F(intlin::row_times(a, A), z);
        C rhs = eval_F(a, eval_Phi(A, z));
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));

        // Phi_{A*B} = Phi_A after Phi_B... with row-vector exponents the
        // composite matrix is B*A: rows of (B*A) are rows of B pushed through A.
        CVec c1 = eval_Phi(mat_mul(B, A), z);
        CVec c2 = eval_Phi(B, eval_Phi(A, z));
        CHECK(dist(c1, c2) < 1e-9 * (1.0 + std::abs(c2[0])));
    }
}

TEST_CASE("monomial map inverts through A^{-1} on positive radii") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntMatrix A = random_nonsingular(rng, n, 4);
        std::uniform_real_distribution<double> rd(0.4, 1.6);
        std::vector<double> r(n);
        for (auto& x : r) x = rd(rng);
        CVec zr(n);
        for (int j = 0; j < n; ++j) zr[j] = C(r[j], 0.0);
        CVec fwd = eval_Phi(A, zr);
        std::vector<double> fr(n);
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(fwd[j].imag()) < 1e-12);
            fr[j] = fwd[j].real();
        }
        auto back = eval_Phi_real(intlin::rational_inverse(A), fr);
        for (int j = 0; j < n; ++j) CHECK(back[j] == doctest::Approx(r[j]).epsilon(1e-10));
    }
}

TEST_CASE("jacobian determinant: closed form vs central differences") {
    // Symbolic check first: diag(2,2) has J = 4*z1*z2.
    IntMatrix D22 = IntMatrix::from_rows({{2, 0}, {0, 2}});
    std::mt19937 rng(33);
    for (int i = 0; i < 5; ++i) {
        CVec z = random_off_axes(rng, 2);
        C expect = 4.0 * z[0] * z[1];
        CHECK(std::abs(jacobian_det(D22, z) - expect) < 1e-13 * std::abs(expect));
    }
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntMatrix A = random_nonsingular(rng, n, 3);
        CVec z = random_off_axes(rng, n, 0.5, 1.1);
        C exact = jacobian_det(A, z);
        C fd = jacobian_fd(A, z);
        CHECK(std::abs(exact - fd) < 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("polar round trip and action unitarity") {
    std::mt19937 rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        CVec z = random_off_axes(rng, 3);
        auto p = polar(z);
        CHECK(dist(from_polar(p.r, p.theta), z) < 1e-12);
        for (double t : p.theta) {
            CHECK(t >= 0.0);
            CHECK(t < 1.0);
        }
    }

    auto G = GroupData::build(IntMatrix::from_rows({{2, -3}, {0, 3}}));
    std::uniform_int_distribution<long> md(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        CVec z = random_off_axes(rng, 2);
        IntVec m1(2), m2(2);
        for (auto& x : m1) x = md(rng);
        for (auto& x : m2) x = md(rng);
        CVec a1 = action_apply(G, m1, action_apply(G, m2, z));
        IntVec msum(2);
        for (int t = 0; t < 2; ++t) msum[t] = m1[t] + m2[t];
        CVec a2 = action_apply(G, msum, z);
        CHECK(dist(a1, a2) < 1e-13);
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(std::abs(a1[j]) - std::abs(z[j])) < 1e-13);
    }
}

TEST_CASE("fiber of diag(2,3) over (1,1) matches a torus grid search") {
    auto G = GroupData::build(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CVec w{C(1.0, 0.0), C(1.0, 0.0)};
    auto fib = fiber(G, w);
    REQUIRE(fib.size() == 6);

    // Oracle: scan the unit torus on a 1/60 grid for points with Phi(z) = w.
    std::vector<CVec> found;
    const int N = 60;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            CVec z = from_polar({1.0, 1.0}, {static_cast<double>(i) / N, static_cast<double>(j) / N});
            CVec img = eval_Phi(G.A(), z);
            if (dist(img, w) < 1e-9) found.push_back(z);
        }
    REQUIRE(found.size() == 6);
    for (const auto& zf : found) {
        double best = 1e9;
        for (const auto& zg : fib) best = std::min(best, dist(zf, zg));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("fiber cardinality, distinctness and forward mapping") {
    std::mt19937 rng(35);
    int done = 0;
    while (done < 25) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntMatrix A = random_nonsingular(rng, n, 3);
        if (abs(A.det()) > 20) continue;
        auto G = GroupData::build(A);
        CVec w = random_off_axes(rng, n, 0.4, 1.3);
        auto fib = fiber(G, w);
        CHECK(fib.size() == static_cast<size_t>(G.order().get_si()));
        for (size_t i = 0; i < fib.size(); ++i) {
            CHECK(dist(eval_Phi(A, fib[i]), w) < 1e-10);
            for (size_t j = i + 1; j < fib.size(); ++j) CHECK(dist(fib[i], fib[j]) > 1e-8);
        }
        ++done;
    }

    CVec on_axis{C(0.0, 0.0)};
    auto G1 = GroupData::build(IntMatrix::from_rows({{2}}));
    CHECK_THROWS_AS(fiber(G1, on_axis), EvalDomainError);
}
