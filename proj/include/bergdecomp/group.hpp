#pragma once

#include <complex>
#include <vector>

#include "bergdecomp/intlin.hpp"

namespace bergdecomp::group {

using intlin::IntMatrix;
using intlin::RatMatrix;
using intlin::SmithDecomposition;

// Root-of-unity exponent: exp(2*pi*i*theta) with theta exact in [0,1).
// Arithmetic stays rational; rendering to complex happens once per use.
struct Phase {
    Rat theta;
    Phase() : theta(0) {}
    explicit Phase(Rat t) : theta(mod_one(std::move(t))) {}
    Phase operator+(const Phase& o) const { return Phase(theta + o.theta); }
    Phase operator-(const Phase& o) const { return Phase(theta - o.theta); }
    Phase scaled(const Int& k) const { return Phase(Rat(k) * theta); }
    bool operator==(const Phase& o) const { return theta == o.theta; }
    bool is_zero() const { return theta == 0; }
    std::complex<double> value() const;
};

enum class Parent {
    quotient_of_A,  // Z^n / {m * A^t}: the acting group
    quotient_of_At  // Z^n / {m * A}: parameterizes the characters
};

struct CosetRep {
    IntVec m;
    Parent parent;
};

// Finite abelian quotient attached to an integer matrix: canonical coset
// representatives, the residue isomorphism onto prod Z/lambda_j, and the dual
// quotient built from A^t. Construction refuses orders above the cap.
class GroupData {
public:
    static GroupData build(const IntMatrix& A, const Int& order_cap = Int(10000));

    const IntMatrix& A() const { return A_; }
    const RatMatrix& A_inv() const { return Ainv_; }
    int dim() const { return A_.dim(); }
    const Int& order() const { return order_; }
    const IntVec& lambda() const { return snf_.lambda; }
    const SmithDecomposition& snf() const { return snf_; }
    const SmithDecomposition& snf_t() const { return snf_t_; }

    // Canonical representatives k * (S^t)^{-1}, k lexicographic over the
    // residue box; index 0 is always the identity coset.
    const std::vector<IntVec>& reps() const { return reps_; }
    const std::vector<IntVec>& char_reps() const { return char_reps_; }

    IntVec iota(const IntVec& m) const;    // residues of [m] in the acting group
    IntVec iota_t(const IntVec& b) const;  // residues of [b] in the dual quotient
    long rep_index(const IntVec& m) const;
    long char_index(const IntVec& b) const;
    bool same_coset(const IntVec& a, const IntVec& b) const;
    bool same_char_coset(const IntVec& a, const IntVec& b) const;

private:
    GroupData(IntMatrix A, SmithDecomposition snf, SmithDecomposition snf_t, RatMatrix Ainv)
        : A_(std::move(A)), snf_(std::move(snf)), snf_t_(std::move(snf_t)), Ainv_(std::move(Ainv)) {}
    IntMatrix A_;
    SmithDecomposition snf_, snf_t_;
    RatMatrix Ainv_;
    Int order_;
    std::vector<IntVec> reps_, char_reps_;
};

// Rotation phase of coordinate j under the coset of m: <m, e_j * A^{-1}> mod 1.
Phase xi_phase(const GroupData& G, const IntVec& m, int j);
std::vector<Phase> xi_phases(const GroupData& G, const IntVec& m);

// chi_b([m]) = exp(2*pi*i <m, b*A^{-1}>).
Phase character_phase(const GroupData& G, const IntVec& b, const IntVec& m);
std::complex<double> character_value(const GroupData& G, const IntVec& b, const IntVec& m);

struct OrthogonalityReport {
    bool exact_pass;     // rational accounting: every pair sums to order or 0
    double max_abs_dev;  // float rendering of the worst pair
};
OrthogonalityReport check_orthogonality(const GroupData& G);

} // namespace bergdecomp::group
