#pragma once

#include <string>
#include <vector>

#include "bergdecomp/rational.hpp"

namespace bergdecomp::intlin {

// Square integer matrix with nonzero determinant. Row-major storage; a(i,j)
// is row i, column j. Row vectors act on the left: (v*M)_j = sum_i v_i M(i,j).
class IntMatrix {
public:
    IntMatrix(int n, std::vector<Int> entries);
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int dim() const { return n_; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Int& det() const { return det_; }
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    std::string str() const;

private:
    IntMatrix() = default;
    int n_ = 0;
    std::vector<Int> a_;
    Int det_;
    friend IntMatrix unchecked_matrix(int, std::vector<Int>);
};

class RatMatrix {
public:
    RatMatrix(int n, std::vector<Rat> entries);
    int dim() const { return n_; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    RatVec row(int i) const;
    std::string str() const;

private:
    int n_;
    std::vector<Rat> a_;
};

// S*A*T = diag(lambda) with |det S| = |det T| = 1 and positive invariant
// factors lambda[0] | lambda[1] | ... | lambda[n-1].
struct SmithDecomposition {
    IntMatrix S;
    IntMatrix T;
    IntVec lambda;
};

Int det(const IntMatrix& A);
SmithDecomposition smith_normal_form(const IntMatrix& A);
RatMatrix rational_inverse(const IntMatrix& A);

// Exact integer inverse; requires |det U| = 1.
IntMatrix integer_inverse(const IntMatrix& U);

// Whether v lies in the lattice {m * A^t : m integral}, i.e. the span of the
// columns of A read as row results.
bool in_row_span(const IntMatrix& A, const IntVec& v);

// v * M for a row vector v.
RatVec row_times(const RatVec& v, const RatMatrix& M);
IntVec row_times(const IntVec& v, const IntMatrix& M);
RatVec row_times(const IntVec& v, const RatMatrix& M);

std::string format_int_vec(const IntVec& v);

} // namespace bergdecomp::intlin
