#pragma once

// Closed-form counts for closed paths on the R-loop bouquet graph: admissible
// loop sequences, word totals, signed and counterclockwise class counts, Witt
// partition functions and graded dimensions. Everything is exact; rational
// intermediates are checked for integrality before being returned as counts.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "feynid/error.hpp"
#include "feynid/numeric.hpp"

namespace feynid::counting
{

inline int mobius(std::int64_t g)
{
    require(g >= 1, "mobius: argument must be positive");
    int result = 1;
    for (std::int64_t p = 2; p * p <= g; ++p) {
        if (g % p == 0) {
            g /= p;
            if (g % p == 0) {
                return 0;
            }
            result = -result;
        }
    }
    if (g > 1) {
        result = -result;
    }
    return result;
}

/// Stirling number of the second kind S(l, k).
inline Integer stirling2(std::int64_t l, std::int64_t k)
{
    require(l >= 0 && k >= 0, "stirling2: arguments must be nonnegative");
    if (k > l) {
        return 0;
    }
    // row-by-row: S(i, j) = j S(i-1, j) + S(i-1, j-1)
    std::vector<Integer> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (std::int64_t i = 1; i <= l; ++i) {
        for (std::int64_t j = std::min(i, k); j >= 1; --j) {
            row[j] = j * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    return row[k];
}

struct SequenceCounts {
    std::int64_t r = 0;
    std::int64_t l = 0;
    Integer closed;      // I_r(l): sequences with i_l = i_1
    Integer non_covering; // q_r(l): i_l != i_1 but some loop missing
    Integer admissible;  // w_r(l)
    Integer r_times_w;   // r w_r(l) in the extended alternating-sum form
};

/// I_r(l), closed form.
inline Integer closed_sequences(std::int64_t r, std::int64_t l)
{
    require(r >= 1 && l >= 1, "closed_sequences: need r >= 1, l >= 1");
    Integer num = ipow(Integer(r - 1), static_cast<std::uint64_t>(l - 1)) + sign_power(l - 1) * Integer(r - 1);
    Integer q = num / r;
    if (q * r != num) {
        throw error(errc::non_integral_result, "I_r(l) not divisible by r");
    }
    return q;
}

/// I_r(l) by the first-order recurrence I_r(l) = (r-1)^(l-2) - I_r(l-1), I_r(1) = 1.
inline Integer closed_sequences_recurrence(std::int64_t r, std::int64_t l)
{
    require(r >= 1 && l >= 1, "closed_sequences_recurrence: need r >= 1, l >= 1");
    Integer value = 1;
    for (std::int64_t k = 2; k <= l; ++k) {
        value = ipow(Integer(r - 1), static_cast<std::uint64_t>(k - 2)) - value;
    }
    return value;
}

inline Integer non_covering_sequences(std::int64_t r, std::int64_t l)
{
    require(r >= 1 && l >= 1, "non_covering_sequences: need r >= 1, l >= 1");
    if (r == 1) {
        return 0;
    }
    Integer total = 0;
    for (std::int64_t k = 0; k <= r - 2; ++k) {
        Integer num = ipow(Integer(k), static_cast<std::uint64_t>(l)) + sign_power(l) * Integer(k);
        Integer term = num / (k + 1);
        if (term * (k + 1) != num) {
            throw error(errc::non_integral_result, "q_r(l) term not divisible by k+1");
        }
        total += sign_power(r + k) * binomial(r - 1, k) * term;
    }
    return total;
}

/// w_r(l): sequences with i_1 fixed, every loop present, no equal neighbours, i_l != i_1.
/// For r = 1 only the single-letter sequence qualifies.
inline Integer admissible_sequences(std::int64_t r, std::int64_t l)
{
    require(r >= 1 && l >= 1, "admissible_sequences: need r >= 1, l >= 1");
    if (r == 1) {
        return l == 1 ? 1 : 0;
    }
    Integer total = 0;
    for (std::int64_t k = 1; k <= r - 1; ++k) {
        Integer num = ipow(Integer(k), static_cast<std::uint64_t>(l)) + sign_power(l) * Integer(k);
        Integer term = num / (k + 1);
        if (term * (k + 1) != num) {
            throw error(errc::non_integral_result, "w_r(l) term not divisible by k+1");
        }
        total += sign_power(r + k + 1) * binomial(r - 1, k) * term;
    }
    return total;
}

/// r w_r(l) as the alternating binomial sum including the j = 1 term, which
/// gives (-1)^(l+1) for r = 1.
inline Integer r_times_admissible(std::int64_t r, std::int64_t l)
{
    require(r >= 1 && l >= 1, "r_times_admissible: need r >= 1, l >= 1");
    Integer total = sign_power(l + r);
    for (std::int64_t j = 2; j <= r; ++j) {
        total += sign_power(r + j) * binomial(r, j) * ipow(Integer(j - 1), static_cast<std::uint64_t>(l));
    }
    return total;
}

inline SequenceCounts sequence_counts(std::int64_t r, std::int64_t l)
{
    SequenceCounts out;
    out.r = r;
    out.l = l;
    out.closed = closed_sequences(r, l);
    out.non_covering = non_covering_sequences(r, l);
    out.admissible = admissible_sequences(r, l);
    out.r_times_w = r_times_admissible(r, l);
    return out;
}

/// Number of valid words of total length N on r loops (both orientations).
inline Integer word_total(std::int64_t r, std::int64_t N)
{
    require(r >= 1 && N >= 1, "word_total: need r >= 1, N >= 1");
    Integer total = 0;
    for (std::int64_t l = 1; l <= N; ++l) {
        total += ipow(Integer(2), static_cast<std::uint64_t>(l)) * binomial(N - 1, l - 1) * r * admissible_sequences(r, l);
    }
    return total;
}

/// Number of valid words of total length N on r loops with every exponent positive.
inline Integer ccw_word_total(std::int64_t r, std::int64_t N)
{
    require(r >= 1 && N >= 1, "ccw_word_total: need r >= 1, N >= 1");
    Integer total = 0;
    for (std::int64_t l = 1; l <= N; ++l) {
        total += binomial(N - 1, l - 1) * r * admissible_sequences(r, l);
    }
    return total;
}

namespace detail
{

// 2y F_r(y) = sum_{k=-1}^{r-1} (-1)^(r+k+1) C(r, k+1) (2k+1)^y
inline Rational signed_class_weight(std::int64_t y, std::int64_t r)
{
    Integer sum = 0;
    for (std::int64_t k = -1; k <= r - 1; ++k) {
        Integer base = 2 * k + 1;
        Integer p = 1;
        for (std::int64_t i = 0; i < y; ++i) {
            p *= base;
        }
        sum += sign_power(r + k + 1) * binomial(r, k + 1) * p;
    }
    return Rational(sum, Integer(2 * y));
}

// sum_{l=1}^{y} (1/l) C(y-1, l-1) 2^(l-1) r w_r(l)
inline Rational signed_word_sum(std::int64_t y, std::int64_t r)
{
    Rational sum = 0;
    for (std::int64_t l = 1; l <= y; ++l) {
        sum += Rational(binomial(y - 1, l - 1) * ipow(Integer(2), static_cast<std::uint64_t>(l - 1)) * r_times_admissible(r, l), Integer(l));
    }
    return sum;
}

// sum_{a=1}^{y} (1/a) C(y-1, a-1) r w_r(a)
inline Rational ccw_word_sum(std::int64_t y, std::int64_t r)
{
    Rational sum = 0;
    for (std::int64_t a = 1; a <= y; ++a) {
        sum += Rational(binomial(y - 1, a - 1) * r_times_admissible(r, a), Integer(a));
    }
    return sum;
}

} // namespace detail

enum class theta_route { closed_form, word_sum };

/// Nonperiodic classes of positive sign, length N, traversing all r loops of a
/// fixed r-loop subgraph. Sum over odd divisors g of N of mu(g)/g F_r(N/g).
inline Integer theta_plus(std::int64_t N, std::int64_t r, theta_route route = theta_route::closed_form)
{
    require(r >= 2 && N >= 1, "theta_plus: need r >= 2, N >= 1");
    Rational sum = 0;
    for (std::int64_t g : divisors(N)) {
        if (g % 2 == 0) {
            continue;
        }
        const int m = mobius(g);
        if (m == 0) {
            continue;
        }
        const Rational inner = route == theta_route::closed_form ? detail::signed_class_weight(N / g, r) : detail::signed_word_sum(N / g, r);
        sum += Rational(m, g) * inner;
    }
    Integer out = to_integer(sum, "theta_plus(" + std::to_string(N) + "," + std::to_string(r) + ")");
    if (out < 0) {
        throw error(errc::negative_result, "theta_plus is negative");
    }
    return out;
}

inline Integer theta_minus(std::int64_t N, std::int64_t r)
{
    require(r >= 2 && N >= 1, "theta_minus: need r >= 2, N >= 1");
    const Integer plus = theta_plus(N, r);
    if (N % 2 == 1 || is_prime(N) || N < 2 * r) {
        return plus;
    }
    return plus - theta_plus(N / 2, r);
}

/// theta_r(N): nonperiodic counterclockwise classes of length N on a fixed r-loop subgraph.
inline Integer theta_ccw(std::int64_t N, std::int64_t r)
{
    require(r >= 1 && N >= 1, "theta_ccw: need r >= 1, N >= 1");
    Rational sum = 0;
    for (std::int64_t g : divisors(N)) {
        const int m = mobius(g);
        if (m != 0) {
            sum += Rational(m, g) * detail::ccw_word_sum(N / g, r);
        }
    }
    Integer out = to_integer(sum, "theta_ccw(" + std::to_string(N) + "," + std::to_string(r) + ")");
    if (out < 0) {
        throw error(errc::negative_result, "theta_ccw is negative");
    }
    return out;
}

enum class total_route { witt, binomial_sum };

/// theta(N) over the full bouquet of R loops.
inline Integer theta_total(std::int64_t N, std::int64_t R, total_route route = total_route::witt)
{
    require(R >= 1 && N >= 1, "theta_total: need R >= 1, N >= 1");
    if (route == total_route::binomial_sum) {
        Integer sum = 0;
        for (std::int64_t r = 1; r <= R; ++r) {
            sum += binomial(R, r) * theta_ccw(N, r);
        }
        return sum;
    }
    Integer sum = 0;
    for (std::int64_t g : divisors(N)) {
        sum += mobius(g) * ipow(Integer(R), static_cast<std::uint64_t>(N / g));
    }
    return to_integer(Rational(sum, Integer(N)), "witt formula");
}

enum class a_route { closed, double_sum };

inline Integer a_coeff(std::int64_t R, std::int64_t alpha, a_route route)
{
    require(R >= 1 && alpha >= 1, "a_coeff: need R >= 1, alpha >= 1");
    if (route == a_route::closed) {
        return sign_power(alpha) * Integer(R - 1) + ipow(Integer(R - 1), static_cast<std::uint64_t>(alpha));
    }
    Integer single = 0;
    for (std::int64_t r = 2; r <= R; ++r) {
        single += sign_power(r) * binomial(R, r);
    }
    Integer dbl = 0;
    for (std::int64_t q = 1; q <= R; ++q) {
        const Integer qp = ipow(Integer(q - 1), static_cast<std::uint64_t>(alpha));
        for (std::int64_t p = q; p <= R; ++p) {
            dbl += sign_power(p + q) * binomial(R, p) * binomial(p, q) * qp;
        }
    }
    return sign_power(alpha) * single + dbl;
}

/// theta(N) = (1/N) sum_{g|N} mu(g) sum_a C(N/g, a) A(R, a); only meaningful for N >= 2.
inline Integer theta_total_from_a(std::int64_t N, std::int64_t R)
{
    require(R >= 1 && N >= 2, "theta_total_from_a: need R >= 1, N >= 2");
    Integer sum = 0;
    for (std::int64_t g : divisors(N)) {
        const int m = mobius(g);
        if (m == 0) {
            continue;
        }
        for (std::int64_t a = 1; a <= N / g; ++a) {
            sum += m * binomial(N / g, a) * a_coeff(R, a, a_route::closed);
        }
    }
    return to_integer(Rational(sum, Integer(N)), "theta_total_from_a");
}

enum class witt_mode { ccw, signed_paths };

/// ccw: W^(r)(n), evaluated by the binomial sum and by the closed power sum,
/// which must agree. signed_paths: W_r(n) (the Lie algebra uses 2 W_r).
inline Rational witt_partition(std::int64_t n, std::int64_t r, witt_mode mode)
{
    require(n >= 1 && r >= 1, "witt_partition: need n >= 1, r >= 1");
    if (mode == witt_mode::signed_paths) {
        return detail::signed_word_sum(n, r);
    }
    const Rational by_sum = detail::ccw_word_sum(n, r);
    Integer power_sum = 0;
    for (std::int64_t j = 1; j <= r; ++j) {
        power_sum += sign_power(j + r) * binomial(r, j) * ipow(Integer(j), static_cast<std::uint64_t>(n));
    }
    const Rational closed(power_sum, Integer(n));
    if (closed != by_sum) {
        throw error(errc::formula_mismatch, "witt partition routes disagree at n=" + std::to_string(n) + ", r=" + std::to_string(r));
    }
    return closed;
}

/// dim L_N for the signed-path algebra: sum_{g|N} mu(g)/g 2 W_r(N/g).
inline Integer dim_L(std::int64_t N, std::int64_t r)
{
    require(N >= 1 && r >= 2, "dim_L: need N >= 1, r >= 2");
    Rational sum = 0;
    for (std::int64_t g : divisors(N)) {
        const int m = mobius(g);
        if (m != 0) {
            sum += Rational(m, g) * 2 * witt_partition(N / g, r, witt_mode::signed_paths);
        }
    }
    Integer out = to_integer(sum, "dim_L(" + std::to_string(N) + "," + std::to_string(r) + ")");
    if (out < 0) {
        throw error(errc::negative_result, "dim_L is negative");
    }
    return out;
}

/// C_j(r) = (-1)^(j+r) C(r, j), exponents of the counterclockwise product form.
inline Integer ccw_exponent(std::int64_t j, std::int64_t r)
{
    return sign_power(j + r) * binomial(r, j);
}

/// b(k) = r (-1)^(r+k) C(r-1, k) / (k+1); must be integral and equal (-1)^(r+k) C(r, k+1).
inline Integer signed_exponent(std::int64_t k, std::int64_t r)
{
    require(r >= 1 && k >= 0 && k < r, "signed_exponent: need 0 <= k < r");
    const Rational q(sign_power(r + k) * r * binomial(r - 1, k), Integer(k + 1));
    Integer b = to_integer(q, "b(k)");
    if (b != sign_power(r + k) * binomial(r, k + 1)) {
        throw error(errc::formula_mismatch, "b(k) disagrees with its binomial form");
    }
    return b;
}

struct WittRecord {
    std::int64_t r = 0;
    std::map<std::int64_t, Rational> witt_ccw;    // W^(r)(n)
    std::map<std::int64_t, Rational> witt_signed; // W_r(n)
    std::map<std::int64_t, Integer> dims;        // dim L_N, signed algebra (r >= 2)
    std::map<std::int64_t, Integer> generator_dims_ccw;
    std::map<std::int64_t, Integer> generator_dims_signed;
    std::map<std::int64_t, Integer> ccw_exponents;    // C_j(r)
    std::map<std::int64_t, Integer> signed_exponents; // b(k)
    std::map<std::int64_t, Integer> a_values;         // A(r, alpha), r read as R
};

} // namespace feynid::counting
