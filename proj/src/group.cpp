#include "bergdecomp/group.hpp"

#include <cmath>
#include <map>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::group {

std::complex<double> Phase::value() const {
    double t = to_double(theta);
    return {std::cos(2.0 * M_PI * t), std::sin(2.0 * M_PI * t)};
}

GroupData GroupData::build(const IntMatrix& A, const Int& order_cap) {
    auto snf = intlin::smith_normal_form(A);
    auto snf_t = intlin::smith_normal_form(A.transpose());
    if (snf.lambda != snf_t.lambda)
        throw NumericError("GroupData: invariant factors of A and A^t disagree");
    GroupData G(A, std::move(snf), std::move(snf_t), intlin::rational_inverse(A));
    G.order_ = abs(A.det());
    if (G.order_ > order_cap)
        throw ResourceCapError("group order " + G.order_.get_str() + " exceeds cap " +
                               order_cap.get_str());

    const int n = A.dim();
    auto enumerate = [&](const IntMatrix& S) {
        IntMatrix StInv = intlin::integer_inverse(S.transpose());
        std::vector<IntVec> out;
        IntVec k(n, Int(0));
        for (;;) {
            out.push_back(intlin::row_times(k, StInv));
            int axis = n - 1;
            while (axis >= 0) {
                k[axis] += 1;
                if (k[axis] < G.snf_.lambda[axis]) break;
                k[axis] = 0;
                --axis;
            }
            if (axis < 0) break;
        }
        return out;
    };
    G.reps_ = enumerate(G.snf_.S);
    G.char_reps_ = enumerate(G.snf_t_.S);
    return G;
}

namespace {

IntVec residues(const SmithDecomposition& dec, const IntVec& m) {
    const int n = dec.S.dim();
    if (static_cast<int>(m.size()) != n) throw ArgumentError("iota: dimension mismatch");
    IntVec r = intlin::row_times(m, dec.S.transpose());
    for (int j = 0; j < n; ++j) {
        Int q;
        mpz_fdiv_r(q.get_mpz_t(), r[j].get_mpz_t(), dec.lambda[j].get_mpz_t());
        r[j] = q;
    }
    return r;
}

long residue_index(const IntVec& lambda, const IntVec& k) {
    Int idx(0);
    for (size_t j = 0; j < k.size(); ++j) idx = idx * lambda[j] + k[j];
    return idx.get_si();
}

} // namespace

IntVec GroupData::iota(const IntVec& m) const { return residues(snf_, m); }
IntVec GroupData::iota_t(const IntVec& b) const { return residues(snf_t_, b); }

long GroupData::rep_index(const IntVec& m) const { return residue_index(snf_.lambda, iota(m)); }
long GroupData::char_index(const IntVec& b) const { return residue_index(snf_.lambda, iota_t(b)); }

bool GroupData::same_coset(const IntVec& a, const IntVec& b) const { return iota(a) == iota(b); }
bool GroupData::same_char_coset(const IntVec& a, const IntVec& b) const {
    return iota_t(a) == iota_t(b);
}

Phase xi_phase(const GroupData& G, const IntVec& m, int j) {
    const int n = G.dim();
    if (j < 0 || j >= n || static_cast<int>(m.size()) != n)
        throw ArgumentError("xi_phase: bad index or dimension");
    Rat acc(0);
    for (int i = 0; i < n; ++i) acc += Rat(m[i]) * G.A_inv().at(j, i);
    return Phase(acc);
}

std::vector<Phase> xi_phases(const GroupData& G, const IntVec& m) {
    std::vector<Phase> out;
    out.reserve(G.dim());
    for (int j = 0; j < G.dim(); ++j) out.push_back(xi_phase(G, m, j));
    return out;
}

Phase character_phase(const GroupData& G, const IntVec& b, const IntVec& m) {
    const int n = G.dim();
    if (static_cast<int>(b.size()) != n || static_cast<int>(m.size()) != n)
        throw ArgumentError("character_phase: dimension mismatch");
    Rat acc(0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) acc += Rat(m[j]) * Rat(b[i]) * G.A_inv().at(i, j);
    return Phase(acc);
}

std::complex<double> character_value(const GroupData& G, const IntVec& b, const IntVec& m) {
    return character_phase(G, b, m).value();
}

OrthogonalityReport check_orthogonality(const GroupData& G) {
    OrthogonalityReport rep{true, 0.0};
    const auto& chars = G.char_reps();
    for (size_t i = 0; i < chars.size(); ++i)
        for (size_t j = 0; j < chars.size(); ++j) {
            bool diag = (i == j);
            // Multiset of phases of chi_{b_i - b_j} over the group. The image
            // of a character is the cyclic group of order l = lcm of phase
            // denominators; each value j/l must occur exactly order/l times,
            // which forces the exact sum to be 0 (or order on the diagonal).
            IntVec d(G.dim());
            for (int t = 0; t < G.dim(); ++t) d[t] = chars[i][t] - chars[j][t];
            std::map<Rat, long> counts;
            std::complex<double> fsum(0.0, 0.0);
            for (const auto& m : G.reps()) {
                Phase p = character_phase(G, d, m);
                counts[p.theta] += 1;
                fsum += p.value();
            }
            bool exact;
            if (diag) {
                exact = counts.size() == 1 && counts.begin()->first == 0;
            } else {
                Int l(1);
                for (const auto& [theta, cnt] : counts) l = lcm(l, Int(theta.get_den()));
                long order_l = l.get_si();
                exact = order_l > 1 && counts.size() == static_cast<size_t>(order_l);
                if (exact) {
                    Int expect = G.order() / l;
                    for (long v = 0; v < order_l && exact; ++v) {
                        Rat key(v, order_l);
                        key.canonicalize();
                        auto it = counts.find(key);
                        exact = it != counts.end() && it->second == expect;
                    }
                }
            }
            if (!exact) rep.exact_pass = false;
            double expect_f = diag ? to_double(G.order()) : 0.0;
            rep.max_abs_dev = std::max(rep.max_abs_dev, std::abs(fsum - expect_f));
        }
    return rep;
}

} // namespace bergdecomp::group
