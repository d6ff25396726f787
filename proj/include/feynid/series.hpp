#pragma once

// Exact truncated power series. TruncatedSeries is univariate over the
// rationals; MultiPoly is multivariate over the integers, truncated at a total
// degree. Every operation truncates eagerly at the explicit bound.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "feynid/counting.hpp"
#include "feynid/error.hpp"
#include "feynid/numeric.hpp"

namespace feynid
{

class TruncatedSeries
{
public:
    explicit TruncatedSeries(int max_degree) : coeffs_(checked_size(max_degree), Rational(0)) {}

    TruncatedSeries(int max_degree, const std::vector<Rational> &coeffs) : TruncatedSeries(max_degree)
    {
        for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) {
            coeffs_[k] = coeffs[k];
        }
    }

    static TruncatedSeries constant(int max_degree, const Rational &c)
    {
        TruncatedSeries s(max_degree);
        s.coeffs_[0] = c;
        return s;
    }

    /// c z^k (zero when k exceeds the bound)
    static TruncatedSeries monomial(int max_degree, int k, const Rational &c = 1)
    {
        TruncatedSeries s(max_degree);
        if (k <= max_degree) {
            s.coeffs_[static_cast<std::size_t>(k)] = c;
        }
        return s;
    }

    int max_degree() const noexcept
    {
        return static_cast<int>(coeffs_.size()) - 1;
    }

    const Rational &operator[](int k) const
    {
        return coeffs_.at(static_cast<std::size_t>(k));
    }

    Rational &operator[](int k)
    {
        return coeffs_.at(static_cast<std::size_t>(k));
    }

    const std::vector<Rational> &coefficients() const noexcept
    {
        return coeffs_;
    }

    TruncatedSeries &operator+=(const TruncatedSeries &o)
    {
        check_bound(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] += o.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries &operator-=(const TruncatedSeries &o)
    {
        check_bound(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] -= o.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries &operator*=(const Rational &c)
    {
        for (auto &x : coeffs_) {
            x *= c;
        }
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a += b;
    }

    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a -= b;
    }

    friend TruncatedSeries operator-(TruncatedSeries a)
    {
        for (auto &x : a.coeffs_) {
            x = -x;
        }
        return a;
    }

    friend TruncatedSeries operator*(TruncatedSeries a, const Rational &c)
    {
        return a *= c;
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        a.check_bound(b);
        const int D = a.max_degree();
        TruncatedSeries out(D);
        for (int i = 0; i <= D; ++i) {
            if (a.coeffs_[static_cast<std::size_t>(i)] == 0) {
                continue;
            }
            for (int j = 0; i + j <= D; ++j) {
                if (b.coeffs_[static_cast<std::size_t>(j)] != 0) {
                    out.coeffs_[static_cast<std::size_t>(i + j)] += a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(j)];
                }
            }
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t checked_size(int max_degree)
    {
        require(max_degree >= 0, "series bound must be nonnegative");
        return static_cast<std::size_t>(max_degree) + 1;
    }

    void check_bound(const TruncatedSeries &o) const
    {
        if (o.coeffs_.size() != coeffs_.size()) {
            throw error(errc::bound_mismatch, "series bounds " + std::to_string(max_degree()) + " and " + std::to_string(o.max_degree()) + " differ");
        }
    }

    std::vector<Rational> coeffs_;
};

/// Re-truncates to a new bound (padding with zeros when growing).
inline TruncatedSeries truncate(const TruncatedSeries &a, int max_degree)
{
    return TruncatedSeries(max_degree, a.coefficients());
}

inline TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a * b;
}

/// Multiplicative inverse; any nonzero constant term is a unit over the rationals.
inline TruncatedSeries series_inverse(const TruncatedSeries &a)
{
    if (a[0] == 0) {
        throw error(errc::non_unit_constant_term, "series with zero constant term has no inverse");
    }
    const int D = a.max_degree();
    TruncatedSeries b(D);
    const Rational inv0 = 1 / a[0];
    b[0] = inv0;
    for (int n = 1; n <= D; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) {
            if (a[k] != 0) {
                acc += a[k] * b[n - k];
            }
        }
        b[n] = -acc * inv0;
    }
    return b;
}

inline TruncatedSeries series_pow(const TruncatedSeries &a, const Integer &e)
{
    const int D = a.max_degree();
    if (e < 0) {
        return series_pow(series_inverse(a), -e);
    }
    TruncatedSeries acc = TruncatedSeries::constant(D, 1);
    if (e == 0) {
        return acc;
    }
    if (a[0] == 0 && e > D) {
        return TruncatedSeries(D);
    }
    TruncatedSeries base = a;
    Integer k = e;
    while (k != 0) {
        if ((k & 1) != 0) {
            acc = acc * base;
        }
        k >>= 1;
        if (k != 0) {
            base = base * base;
        }
    }
    return acc;
}

inline TruncatedSeries series_pow(const TruncatedSeries &a, std::int64_t e)
{
    return series_pow(a, Integer(e));
}

/// exp(a) for a with zero constant term: n b_n = sum_k k a_k b_{n-k}.
inline TruncatedSeries series_exp(const TruncatedSeries &a)
{
    if (a[0] != 0) {
        throw error(errc::bad_constant_term, "exp needs a zero constant term");
    }
    const int D = a.max_degree();
    TruncatedSeries b(D);
    b[0] = 1;
    for (int n = 1; n <= D; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) {
            if (a[k] != 0) {
                acc += k * a[k] * b[n - k];
            }
        }
        b[n] = acc / n;
    }
    return b;
}

/// log(a) for a with constant term 1: n b_n = n a_n - sum_{k<n} k b_k a_{n-k}.
inline TruncatedSeries series_log(const TruncatedSeries &a)
{
    if (a[0] != 1) {
        throw error(errc::bad_constant_term, "log needs constant term 1");
    }
    const int D = a.max_degree();
    TruncatedSeries b(D);
    for (int n = 1; n <= D; ++n) {
        Rational acc = n * a[n];
        for (int k = 1; k < n; ++k) {
            if (a[n - k] != 0) {
                acc -= k * b[k] * a[n - k];
            }
        }
        b[n] = acc / n;
    }
    return b;
}

/// Sparse polynomial in R variables with integer coefficients, truncated at total degree D.
class MultiPoly
{
public:
    using Exponents = std::vector<int>;

    MultiPoly(int variables, int max_degree) : vars_(variables), max_degree_(max_degree)
    {
        require(variables >= 1, "MultiPoly needs at least one variable");
        require(max_degree >= 0, "MultiPoly bound must be nonnegative");
    }

    static MultiPoly constant(int variables, int max_degree, const Integer &c)
    {
        MultiPoly p(variables, max_degree);
        p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
        return p;
    }

    /// z_i (0-based i)
    static MultiPoly variable(int variables, int max_degree, int i)
    {
        MultiPoly p(variables, max_degree);
        Exponents e(static_cast<std::size_t>(variables), 0);
        e.at(static_cast<std::size_t>(i)) = 1;
        p.add_term(e, 1);
        return p;
    }

    static MultiPoly monomial(int variables, int max_degree, const Exponents &e, const Integer &c = 1)
    {
        MultiPoly p(variables, max_degree);
        p.add_term(e, c);
        return p;
    }

    int variables() const noexcept
    {
        return vars_;
    }
    int max_degree() const noexcept
    {
        return max_degree_;
    }
    const std::map<Exponents, Integer> &terms() const noexcept
    {
        return terms_;
    }

    static int total_degree(const Exponents &e)
    {
        int d = 0;
        for (int x : e) {
            d += x;
        }
        return d;
    }

    /// Adds c z^e; terms above the bound are dropped and zeros are never stored.
    void add_term(const Exponents &e, const Integer &c)
    {
        require(e.size() == static_cast<std::size_t>(vars_), "exponent vector has the wrong length");
        if (c == 0 || total_degree(e) > max_degree_) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Integer coefficient(const Exponents &e) const
    {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    Integer constant_term() const
    {
        return coefficient(Exponents(static_cast<std::size_t>(vars_), 0));
    }

    friend MultiPoly operator+(const MultiPoly &a, const MultiPoly &b)
    {
        a.check_bound(b);
        MultiPoly out = a;
        for (const auto &[e, c] : b.terms_) {
            out.add_term(e, c);
        }
        return out;
    }

    friend MultiPoly operator-(const MultiPoly &a, const MultiPoly &b)
    {
        a.check_bound(b);
        MultiPoly out = a;
        for (const auto &[e, c] : b.terms_) {
            out.add_term(e, -c);
        }
        return out;
    }

    friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b)
    {
        a.check_bound(b);
        MultiPoly out(a.vars_, a.max_degree_);
        Exponents e(static_cast<std::size_t>(a.vars_), 0);
        for (const auto &[ea, ca] : a.terms_) {
            const int da = total_degree(ea);
            for (const auto &[eb, cb] : b.terms_) {
                if (da + total_degree(eb) > a.max_degree_) {
                    continue;
                }
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly &a, const MultiPoly &b)
    {
        return a.vars_ == b.vars_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
    }

    void check_bound(const MultiPoly &o) const
    {
        if (o.vars_ != vars_ || o.max_degree_ != max_degree_) {
            throw error(errc::bound_mismatch, "MultiPoly operands differ in variable count or degree bound");
        }
    }

private:
    int vars_;
    int max_degree_;
    std::map<Exponents, Integer> terms_;
};

inline MultiPoly series_mul(const MultiPoly &a, const MultiPoly &b)
{
    return a * b;
}

/// Inverse over the integers: the constant term must be +1 or -1.
inline MultiPoly series_inverse(const MultiPoly &a)
{
    const Integer c = a.constant_term();
    if (c != 1 && c != -1) {
        throw error(errc::non_unit_constant_term, "constant term " + c.str() + " is not a unit over the integers");
    }
    // a = c (1 + h)  =>  a^-1 = c sum_k (-h)^k, and c^-1 = c
    MultiPoly minus_h = MultiPoly::constant(a.variables(), a.max_degree(), 1) - a * MultiPoly::constant(a.variables(), a.max_degree(), c);
    MultiPoly acc = MultiPoly::constant(a.variables(), a.max_degree(), 1);
    MultiPoly power = acc;
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * minus_h;
        if (power.terms().empty()) {
            break;
        }
        acc = acc + power;
    }
    return acc * MultiPoly::constant(a.variables(), a.max_degree(), c);
}

inline MultiPoly series_pow(const MultiPoly &a, const Integer &e)
{
    if (e < 0) {
        return series_pow(series_inverse(a), -e);
    }
    MultiPoly acc = MultiPoly::constant(a.variables(), a.max_degree(), 1);
    if (e == 0) {
        return acc;
    }
    if (a.constant_term() == 0 && e > a.max_degree()) {
        return MultiPoly(a.variables(), a.max_degree());
    }
    MultiPoly base = a;
    Integer k = e;
    while (k != 0) {
        if ((k & 1) != 0) {
            acc = acc * base;
        }
        k >>= 1;
        if (k != 0) {
            base = base * base;
        }
    }
    return acc;
}

inline MultiPoly series_pow(const MultiPoly &a, std::int64_t e)
{
    return series_pow(a, Integer(e));
}

/// (1 + sign z^e)^k by the (generalized) binomial theorem, truncated.
inline MultiPoly binomial_power(int variables, int max_degree, const MultiPoly::Exponents &e, int sign, const Integer &k)
{
    MultiPoly out(variables, max_degree);
    const int deg = MultiPoly::total_degree(e);
    require(deg > 0, "binomial_power: monomial must be nonconstant");
    MultiPoly::Exponents cur(static_cast<std::size_t>(variables), 0);
    Integer coeff = 1;
    for (int i = 0;; ++i) {
        if (deg * i > max_degree) {
            break;
        }
        if (k >= 0 && i > k) {
            break;
        }
        out.add_term(cur, (sign < 0 && i % 2 == 1) ? Integer(-coeff) : coeff);
        coeff = coeff * (k - i) / (i + 1);
        for (std::size_t v = 0; v < cur.size(); ++v) {
            cur[v] += e[v];
        }
    }
    return out;
}

/// f_r(z) = 1 - prod_{j=1}^{r} (1 - j z)^{C_j(r)} for the counterclockwise algebra.
inline TruncatedSeries f_r_ccw(int r, int max_degree)
{
    require(r >= 1, "f_r_ccw: r must be >= 1");
    TruncatedSeries prod = TruncatedSeries::constant(max_degree, 1);
    for (int j = 1; j <= r; ++j) {
        TruncatedSeries factor = TruncatedSeries::constant(max_degree, 1) - TruncatedSeries::monomial(max_degree, 1, j);
        prod = prod * series_pow(factor, counting::ccw_exponent(j, r));
    }
    return TruncatedSeries::constant(max_degree, 1) - prod;
}

/// f_r(z) = 1 - (1+z)^{(-1)^r} prod_{k=0}^{r-1} (1 - (2k+1) z)^{-b(k)} for the signed-path algebra.
inline TruncatedSeries f_r_signed(int r, int max_degree)
{
    require(r >= 2, "f_r_signed: r must be >= 2");
    const TruncatedSeries one = TruncatedSeries::constant(max_degree, 1);
    TruncatedSeries prod = series_pow(one + TruncatedSeries::monomial(max_degree, 1), Integer(sign_power(r)));
    for (int k = 0; k < r; ++k) {
        TruncatedSeries factor = one - TruncatedSeries::monomial(max_degree, 1, 2 * k + 1);
        prod = prod * series_pow(factor, Integer(-counting::signed_exponent(k, r)));
    }
    return one - prod;
}

/// d(i) = coefficient of z^i, asserted integral and nonnegative.
inline std::map<int, Integer> d_coeffs(const TruncatedSeries &f)
{
    std::map<int, Integer> out;
    for (int i = 0; i <= f.max_degree(); ++i) {
        Integer d = to_integer(f[i], "d(" + std::to_string(i) + ")");
        if (d < 0) {
            throw error(errc::negative_result, "d(" + std::to_string(i) + ") is negative");
        }
        out.emplace(i, std::move(d));
    }
    return out;
}

/// g(z) = sum_n W(n) z^n; ccw uses W^(r), signed uses 2 W_r.
inline TruncatedSeries witt_generating_series(int r, int max_degree, counting::witt_mode mode)
{
    TruncatedSeries g(max_degree);
    for (int n = 1; n <= max_degree; ++n) {
        g[n] = counting::witt_partition(n, r, mode);
        if (mode == counting::witt_mode::signed_paths) {
            g[n] *= 2;
        }
    }
    return g;
}

/// Collects Witt partition values, dimensions, generator dimensions and the
/// product-form exponents for one r up to degree max_n.
inline counting::WittRecord witt_record(int r, int max_n)
{
    require(r >= 1 && max_n >= 1, "witt_record: need r >= 1, max_n >= 1");
    counting::WittRecord rec;
    rec.r = r;
    for (int n = 1; n <= max_n; ++n) {
        rec.witt_ccw.emplace(n, counting::witt_partition(n, r, counting::witt_mode::ccw));
        rec.witt_signed.emplace(n, counting::witt_partition(n, r, counting::witt_mode::signed_paths));
        rec.a_values.emplace(n, counting::a_coeff(r, n, counting::a_route::closed));
        if (r >= 2) {
            rec.dims.emplace(n, counting::dim_L(n, r));
        }
    }
    for (int j = 1; j <= r; ++j) {
        rec.ccw_exponents.emplace(j, counting::ccw_exponent(j, r));
    }
    for (int k = 0; k < r; ++k) {
        rec.signed_exponents.emplace(k, counting::signed_exponent(k, r));
    }
    for (const auto &[i, d] : d_coeffs(f_r_ccw(r, max_n))) {
        rec.generator_dims_ccw.emplace(i, d);
    }
    if (r >= 2) {
        for (const auto &[i, d] : d_coeffs(f_r_signed(r, max_n))) {
            rec.generator_dims_signed.emplace(i, d);
        }
    }
    return rec;
}

} // namespace feynid
