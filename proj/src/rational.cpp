#include "bergdecomp/rational.hpp"

#include <cctype>

#include "bergdecomp/errors.hpp"

namespace bergdecomp {

Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw ArgumentError("rat_pow: zero base with negative exponent");
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), ae);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), ae);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

Rat parse_rat(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw ArgumentError("empty rational literal");
    auto valid = [](const std::string& u) {
        if (u.empty()) return false;
        size_t i = (u[0] == '+' || u[0] == '-') ? 1 : 0;
        if (i == u.size()) return false;
        for (; i < u.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
        return true;
    };
    std::string num = t, den = "1";
    if (auto pos = t.find('/'); pos != std::string::npos) {
        num = t.substr(0, pos);
        den = t.substr(pos + 1);
    }
    if (!valid(num) || !valid(den))
        throw ArgumentError("bad rational literal '" + s + "' (expected p or p/q)");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw ArgumentError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw ArgumentError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string format_rat(const Rat& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

std::string format_rat_vec(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_rat(v[i]);
    }
    return s + ")";
}

} // namespace bergdecomp
