#ifndef JFCELL_RATIONAL_HPP
#define JFCELL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jfcell {

using Int = long long;
using Rat = mpq_class;

inline Rat rat(Int num, Int den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q".
inline Rat rat_parse(const std::string& s)
{
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r)
{
    return r.get_str();
}

inline bool rat_is_integer(const Rat& r)
{
    return r.get_den() == 1;
}

// Largest integer <= r.
inline mpz_class rat_floor(const Rat& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int gcd_ll(Int a, Int b)
{
    return std::gcd(a, b);
}

inline Int lcm_ll(Int a, Int b)
{
    if (a == 0 || b == 0)
        return 0;
    return a / std::gcd(a, b) * b;
}

} // namespace jfcell

#endif
