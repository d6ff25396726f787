#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "feynid/counting.hpp"
#include "feynid/series.hpp"

using namespace feynid;

namespace
{

TruncatedSeries one(int D)
{
    return TruncatedSeries::constant(D, 1);
}

TruncatedSeries z(int D, const Rational &c = 1)
{
    return TruncatedSeries::monomial(D, 1, c);
}

TruncatedSeries random_series(std::mt19937 &rng, int D, const Rational &constant)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    TruncatedSeries s(D);
    s[0] = constant;
    for (int k = 1; k <= D; ++k) {
        s[k] = Rational(num(rng), den(rng));
    }
    return s;
}

std::vector<Rational> coeffs(std::initializer_list<int> v)
{
    return std::vector<Rational>(v.begin(), v.end());
}

} // namespace

TEST(Series, MulExamples)
{
    EXPECT_EQ((one(2) + z(2)) * (one(2) - z(2)), TruncatedSeries(2, coeffs({1, 0, -1})));
    TruncatedSeries geo(5, coeffs({1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(geo * (one(5) - z(5)), one(5));
    EXPECT_THROW(one(2) * one(3), error);
}

TEST(Series, PowExamples)
{
    EXPECT_EQ(series_pow(one(3) - z(3), -1), TruncatedSeries(3, coeffs({1, 1, 1, 1})));
    EXPECT_EQ(series_pow(one(4) - TruncatedSeries::monomial(4, 2), 2), TruncatedSeries(4, coeffs({1, 0, -2, 0, 1})));
    EXPECT_EQ(series_pow(one(3) - z(3, 2), -3), TruncatedSeries(3, coeffs({1, 6, 24, 80})));
    EXPECT_EQ(series_pow(z(3), 0), one(3));
    EXPECT_THROW(series_pow(z(3), -1), error);
}

TEST(Series, ExpLogExamples)
{
    const TruncatedSeries l = series_log(series_pow(one(4) - z(4), -1));
    EXPECT_EQ(l, TruncatedSeries(4, {0, 1, Rational(1, 2), Rational(1, 3), Rational(1, 4)}));
    EXPECT_EQ(series_exp(TruncatedSeries(6)), one(6));
    EXPECT_THROW(series_exp(one(3)), error);
    EXPECT_THROW(series_log(z(3)), error);
}

TEST(Series, ExpLogInverseRandomized)
{
    std::mt19937 rng(20240611);
    for (int i = 0; i < 200; ++i) {
        const int D = 1 + i % 9;
        const TruncatedSeries a = random_series(rng, D, 0);
        EXPECT_EQ(series_log(series_exp(a)), a);
        const TruncatedSeries b = random_series(rng, D, 1);
        EXPECT_EQ(series_exp(series_log(b)), b);
    }
}

TEST(Series, RingAxiomsRandomized)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const int D = 6;
        const auto a = random_series(rng, D, Rational(i % 3));
        const auto b = random_series(rng, D, 1);
        const auto c = random_series(rng, D, -2);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(b * series_inverse(b), one(D));
        EXPECT_EQ(series_pow(c, 3), c * c * c);
        EXPECT_EQ(series_pow(b, -2) * b * b, one(D));
    }
}

TEST(Series, Truncation)
{
    const TruncatedSeries a = series_pow(one(10) + z(10), 10);
    EXPECT_EQ(a[10], 1);
    const TruncatedSeries b = truncate(a, 3);
    EXPECT_EQ(b.max_degree(), 3);
    EXPECT_EQ(b, TruncatedSeries(3, coeffs({1, 10, 45, 120})));
}

TEST(MultiPoly, Basics)
{
    const MultiPoly one2 = MultiPoly::constant(2, 2, 1);
    const MultiPoly z1 = MultiPoly::variable(2, 2, 0);
    const MultiPoly z2 = MultiPoly::variable(2, 2, 1);
    const MultiPoly p = (one2 + z1) * (one2 + z2);
    EXPECT_EQ(p.terms().size(), 4u);
    EXPECT_EQ(p.coefficient({1, 1}), 1);
    // degree-3 terms vanish at D = 2
    const MultiPoly q = p * (one2 + z1);
    EXPECT_EQ(q.coefficient({2, 1}), 0);
    EXPECT_EQ(q.coefficient({2, 0}), 1);
    for (const auto &[e, c] : q.terms()) {
        EXPECT_LE(MultiPoly::total_degree(e), 2);
        EXPECT_NE(c, 0);
    }
    EXPECT_THROW(p * MultiPoly::constant(3, 2, 1), error);
}

TEST(MultiPoly, InverseAndPowers)
{
    const int D = 6;
    const MultiPoly one3 = MultiPoly::constant(3, D, 1);
    const MultiPoly f = one3 - MultiPoly::monomial(3, D, {1, 1, 0}) + MultiPoly::monomial(3, D, {0, 0, 2}, 3);
    EXPECT_EQ(series_inverse(f) * f, one3);
    EXPECT_EQ(series_pow(f, -3) * series_pow(f, 3), one3);
    EXPECT_EQ(series_pow(f, 2), f * f);
    EXPECT_THROW(series_inverse(MultiPoly::constant(3, D, 2)), error);
    // (1 - z1 z2)^k by the binomial helper
    for (int k = -3; k <= 3; ++k) {
        EXPECT_EQ(binomial_power(3, D, {1, 1, 0}, -1, Integer(k)), series_pow(one3 - MultiPoly::monomial(3, D, {1, 1, 0}), Integer(k)));
        EXPECT_EQ(binomial_power(3, D, {0, 1, 2}, 1, Integer(k)), series_pow(one3 + MultiPoly::monomial(3, D, {0, 1, 2}), Integer(k)));
    }
}

TEST(Generating, CcwExamples)
{
    EXPECT_EQ(f_r_ccw(1, 8), z(8));
    const auto d2 = d_coeffs(f_r_ccw(2, 16));
    EXPECT_EQ(d2.at(0), 0);
    for (int j = 1; j <= 16; ++j) {
        EXPECT_EQ(d2.at(j), j - 1);
    }
    EXPECT_EQ(d2.at(5), 4);
    const auto d1 = d_coeffs(f_r_ccw(1, 8));
    for (int j = 0; j <= 8; ++j) {
        EXPECT_EQ(d1.at(j), j == 1 ? 1 : 0);
    }
    const auto d3 = d_coeffs(f_r_ccw(3, 6));
    EXPECT_EQ(d3.at(3), 2);
    EXPECT_EQ(d3.at(4), 9);
    EXPECT_EQ(d3.at(5), 30);
}

TEST(Generating, SignedExamples)
{
    const auto d2 = d_coeffs(f_r_signed(2, 16));
    for (int j = 1; j <= 16; ++j) {
        EXPECT_EQ(d2.at(j), 4 * (j - 1));
    }
    EXPECT_EQ(d2.at(5), 16);
    const auto d3 = d_coeffs(f_r_signed(3, 6));
    EXPECT_EQ(d3.at(3), 16);
    EXPECT_EQ(d3.at(4), 96);
    EXPECT_EQ(d3.at(5), 480);
    for (int r = 2; r <= 6; ++r) {
        const auto f = f_r_signed(r, 4);
        EXPECT_EQ(f[0], 0);
        EXPECT_EQ(f[1], 0);
    }
}

TEST(Generating, RationalClosedForms)
{
    const int D = 16;
    const TruncatedSeries o = one(D);
    EXPECT_EQ(f_r_ccw(2, D), TruncatedSeries::monomial(D, 2) * series_pow(o - z(D), -2));
    EXPECT_EQ(f_r_ccw(3, D), (TruncatedSeries::monomial(D, 3, 2) - TruncatedSeries::monomial(D, 4, 3)) * series_pow(o - z(D, 2), -3));
    EXPECT_EQ(f_r_signed(2, D), TruncatedSeries::monomial(D, 2, 4) * series_pow(o - z(D), -2));
    EXPECT_EQ(f_r_signed(2, D), o - (o + z(D)) * (o - z(D, 3)) * series_pow(o - z(D), -2));
    EXPECT_EQ(f_r_signed(3, D), o - series_pow(o - z(D), 3) * (o - z(D, 5)) * series_inverse(o + z(D)) * series_pow(o - z(D, 3), -3));
}

TEST(Generating, LogOfProductIsWittSeries)
{
    const int D = 12;
    for (int r = 1; r <= 4; ++r) {
        TruncatedSeries prod = one(D);
        for (int j = 1; j <= r; ++j) {
            prod = prod * series_pow(one(D) - z(D, j), -counting::ccw_exponent(j, r));
        }
        EXPECT_EQ(series_log(prod), witt_generating_series(r, D, counting::witt_mode::ccw)) << r;
    }
    for (int r = 2; r <= 3; ++r) {
        TruncatedSeries prod = series_pow(one(D) + z(D), Integer(sign_power(r + 1)));
        for (int k = 0; k < r; ++k) {
            prod = prod * series_pow(one(D) - z(D, 2 * k + 1), counting::signed_exponent(k, r));
        }
        EXPECT_EQ(series_log(prod), witt_generating_series(r, D, counting::witt_mode::signed_paths)) << r;
    }
}

TEST(Generating, DCoeffsRejectsFractions)
{
    TruncatedSeries f(2);
    f[1] = Rational(1, 2);
    EXPECT_THROW(d_coeffs(f), error);
}

TEST(Generating, WittRecord)
{
    const auto rec = witt_record(2, 8);
    EXPECT_EQ(rec.dims.at(2), 4);
    EXPECT_EQ(rec.witt_ccw.at(2), Rational(1));
    EXPECT_EQ(rec.generator_dims_ccw.at(5), 4);
    EXPECT_EQ(rec.generator_dims_signed.at(5), 16);
    EXPECT_EQ(rec.ccw_exponents.at(1), -2);
    EXPECT_EQ(rec.signed_exponents.at(0), 2);
    EXPECT_EQ(rec.signed_exponents.at(1), -1);
    EXPECT_EQ(rec.a_values.at(2), 2);
}
