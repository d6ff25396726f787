#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "feynid/error.hpp"

namespace feynid
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(Integer base, std::uint64_t e)
{
    Integer acc = 1;
    while (e != 0) {
        if (e & 1u) {
            acc *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return acc;
}

// (-1)^e for any integer e
constexpr int sign_power(std::int64_t e) noexcept
{
    return (e % 2 == 0) ? 1 : -1;
}

inline Integer binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    Integer acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

inline bool is_integral(const Rational &q)
{
    return boost::multiprecision::denominator(q) == 1;
}

// Converts an exact rational to an integer; anything else is a formula misuse.
inline Integer to_integer(const Rational &q, const std::string &what)
{
    if (!is_integral(q)) {
        throw error(errc::non_integral_result, what + " evaluated to the non-integral value " + q.str());
    }
    return boost::multiprecision::numerator(q);
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) {
                hi.push_back(n / d);
            }
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

} // namespace feynid
