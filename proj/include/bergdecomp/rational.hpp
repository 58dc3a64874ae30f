#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace bergdecomp {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(const Int& z) { return z.get_d(); }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Reduce into [0,1).
inline Rat mod_one(const Rat& q) {
    Rat r = q - Rat(rat_floor(q));
    r.canonicalize();
    return r;
}

// q^e for integer e; e < 0 requires q != 0.
Rat rat_pow(const Rat& q, long e);

// Parses "p/q" or "p" with optional sign; throws ArgumentError on junk.
Rat parse_rat(const std::string& s);

// Canonical "p/q" text ("p" when the denominator is 1).
std::string format_rat(const Rat& q);

std::string format_rat_vec(const RatVec& v);

} // namespace bergdecomp
