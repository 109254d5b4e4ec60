#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace assoc {

// Exact rational scalar used everywhere exactness matters.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p/q" or "p" (decimal integers, optional sign) into canonical form.
// Throws std::invalid_argument on malformed input or zero denominator.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    mpq_class r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// mpq_class(p, q) does not reduce; this does.
inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Floor division helper: largest integer n with n*b <= a, for b > 0.
inline Int floor_div(const Rat& a, const Rat& b) {
    Rat q = a / b;
    Int n;
    mpz_fdiv_q(n.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return n;
}

}  // namespace assoc
