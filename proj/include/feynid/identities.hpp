#pragma once

// Verification harness: each verify_* call evaluates both sides of one
// identity exactly and reports the first disagreeing term, if any.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "feynid/census.hpp"
#include "feynid/counting.hpp"
#include "feynid/error.hpp"
#include "feynid/json_io.hpp"
#include "feynid/numeric.hpp"
#include "feynid/series.hpp"

namespace feynid::identities
{

using feynid::to_json;

struct Mismatch {
    std::string term;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string identity;
    json params = json::object();
    bool pass = true;
    std::optional<Mismatch> first_mismatch;
    json audit = json::object();
    std::int64_t elapsed_ms = 0;
};

struct VerifyOptions {
    std::uint64_t budget = default_word_budget;
    // Adds 1 to the exponent of the factor at this position (in the documented
    // factor order). Used to check that the harness can fail.
    std::optional<std::size_t> corrupt_factor;
};

inline json to_json(const VerificationReport &r, bool with_timing = false)
{
    json j;
    j["identity"] = r.identity;
    j["status"] = r.pass ? "pass" : "fail";
    j["params"] = r.params;
    if (r.first_mismatch) {
        j["first_mismatch"] = json{{"term", r.first_mismatch->term}, {"lhs", r.first_mismatch->lhs}, {"rhs", r.first_mismatch->rhs}};
    }
    if (!r.audit.empty()) {
        j["audit"] = r.audit;
    }
    // wall-clock time is the only nondeterministic field, so it is opt-in
    if (with_timing) {
        j["elapsed_ms"] = r.elapsed_ms;
    }
    return j;
}

namespace detail
{

class stopwatch
{
public:
    std::int64_t ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Integer bump(const Integer &e, const VerifyOptions &opts, std::size_t index)
{
    return opts.corrupt_factor && *opts.corrupt_factor == index ? e + 1 : e;
}

inline std::string monomial_name(const MultiPoly::Exponents &e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += "z" + std::to_string(i + 1);
        if (e[i] != 1) {
            out += "^" + std::to_string(e[i]);
        }
    }
    return out.empty() ? "1" : out;
}

inline std::optional<Mismatch> compare(const MultiPoly &lhs, const MultiPoly &rhs)
{
    std::map<MultiPoly::Exponents, int> keys;
    for (const auto &kv : lhs.terms()) {
        keys.emplace(kv.first, 0);
    }
    for (const auto &kv : rhs.terms()) {
        keys.emplace(kv.first, 0);
    }
    // ascending total degree, then lexicographic
    std::vector<MultiPoly::Exponents> order;
    for (const auto &kv : keys) {
        order.push_back(kv.first);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return MultiPoly::total_degree(a) < MultiPoly::total_degree(b); });
    for (const auto &e : order) {
        const Integer a = lhs.coefficient(e);
        const Integer b = rhs.coefficient(e);
        if (a != b) {
            return Mismatch{monomial_name(e), a.str(), b.str()};
        }
    }
    return std::nullopt;
}

inline std::optional<Mismatch> compare(const TruncatedSeries &lhs, const TruncatedSeries &rhs)
{
    const int D = std::min(lhs.max_degree(), rhs.max_degree());
    for (int k = 0; k <= D; ++k) {
        if (lhs[k] != rhs[k]) {
            return Mismatch{"z^" + std::to_string(k), lhs[k].str(), rhs[k].str()};
        }
    }
    return std::nullopt;
}

// Products of (1 - z^k)^e and (1 + z^k)^e kept as multiplicities of the
// cyclotomic polynomials Phi_d. 1 - z^k = prod_{d|k} Phi_d and
// 1 + z^k = prod_{d|2k, d not dividing k} Phi_d. Unique factorisation in Z[z]
// makes equality of these maps equality of the expanded polynomials.
class cyclotomic_product
{
public:
    void multiply_one_minus(std::int64_t k, const Integer &e)
    {
        for (std::int64_t d : divisors(k)) {
            add(d, e);
        }
    }
    void multiply_one_plus(std::int64_t k, const Integer &e)
    {
        for (std::int64_t d : divisors(2 * k)) {
            if (k % d != 0) {
                add(d, e);
            }
        }
    }
    const std::map<std::int64_t, Integer> &factors() const noexcept
    {
        return mult_;
    }

private:
    void add(std::int64_t d, const Integer &e)
    {
        if (e == 0) {
            return;
        }
        auto &slot = mult_[d];
        slot += e;
        if (slot == 0) {
            mult_.erase(d);
        }
    }
    std::map<std::int64_t, Integer> mult_;
};

// Dense exact polynomial multiplication by (1 + sign z^k)^e through e
// in-place passes.
inline void multiply_dense(std::vector<Integer> &p, std::int64_t k, int sign, const Integer &e)
{
    const auto kk = static_cast<std::size_t>(k);
    for (Integer i = 0; i < e; ++i) {
        p.resize(p.size() + kk, 0);
        for (std::size_t idx = p.size(); idx-- > kk;) {
            if (p[idx - kk] != 0) {
                p[idx] += sign * p[idx - kk];
            }
        }
    }
}

inline void trim(std::vector<Integer> &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

// Lists positive compositions of N into r parts, lexicographic.
inline std::vector<std::vector<std::int64_t>> positive_vectors(int r, int N)
{
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(static_cast<std::size_t>(r), 0);
    auto rec = [&](auto &self, int pos, int remaining) -> void {
        if (pos == r - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= remaining - (r - 1 - pos); ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (N >= r) {
        rec(rec, 0, N);
    }
    return out;
}

inline std::vector<std::vector<int>> subsets(int R, int r)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto &self, int next) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = next; i < R; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

/// Aperiodic necklaces of length N over an R-letter alphabet, counted by
/// listing every string and keeping those strictly smaller than all their
/// nontrivial rotations.
inline Integer count_aperiodic_necklaces(int R, int N)
{
    require(R >= 1 && N >= 1, "count_aperiodic_necklaces: need R >= 1, N >= 1");
    const Integer total = ipow(Integer(R), static_cast<std::uint64_t>(N));
    if (total > 50'000'000) {
        throw error(errc::scope_too_large, "necklace enumeration too large");
    }
    std::vector<int> s(static_cast<std::size_t>(N), 0);
    std::uint64_t count = 0;
    while (true) {
        bool lyndon = true;
        for (int k = 1; k < N && lyndon; ++k) {
            for (int i = 0; i < N; ++i) {
                const int a = s[static_cast<std::size_t>((k + i) % N)];
                const int b = s[static_cast<std::size_t>(i)];
                if (a != b) {
                    lyndon = a > b;
                    break;
                }
                if (i == N - 1) {
                    lyndon = false; // equal rotation: periodic
                }
            }
        }
        count += lyndon ? 1 : 0;
        int pos = N - 1;
        while (pos >= 0 && s[static_cast<std::size_t>(pos)] == R - 1) {
            s[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++s[static_cast<std::size_t>(pos)];
    }
    return count;
}

/// Class counts theta_pm(m) for every multiplicity vector m of total at most
/// max_total over loops 1..r, read off censuses.
inline std::map<std::vector<std::int64_t>, SignedClassCount> census_exponents(int r, int max_total, std::uint64_t budget)
{
    std::map<std::vector<std::int64_t>, SignedClassCount> out;
    CensusOptions opts;
    opts.budget = budget;
    opts.track_multiplicities = true;
    for (int N = r; N <= max_total; ++N) {
        Census c = census(r, N, opts);
        for (auto &[m, counts] : c.by_multiplicity) {
            out.emplace(m, std::move(counts));
        }
    }
    return out;
}

/// Truncated multivariate product over every subgraph with at least two loops,
/// times the single-loop factors (1 + z_j), against prod_j (1 + z_j).
/// Factor order: ascending total degree, lexicographic monomial, (1+) before (1-).
inline VerificationReport verify_feynman(int R, int D, const VerifyOptions &opts = {})
{
    require(R >= 1 && D >= 1, "verify_feynman: need R >= 1, D >= 1");
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "feynman";
    rep.params = json{{"R", R}, {"D", D}};

    struct factor {
        MultiPoly::Exponents e;
        int sign;
        Integer exponent;
    };
    std::vector<factor> factors;
    Integer classes = 0;
    for (int r = 2; r <= R && r <= D; ++r) {
        const auto exps = census_exponents(r, D, opts.budget);
        for (const auto &sub : detail::subsets(R, r)) {
            for (const auto &[m, counts] : exps) {
                MultiPoly::Exponents e(static_cast<std::size_t>(R), 0);
                for (int k = 0; k < r; ++k) {
                    e[static_cast<std::size_t>(sub[static_cast<std::size_t>(k)])] = static_cast<int>(m[static_cast<std::size_t>(k)]);
                }
                factors.push_back({e, +1, counts.plus});
                factors.push_back({e, -1, counts.minus});
                classes += counts.plus + counts.minus;
            }
        }
    }
    std::stable_sort(factors.begin(), factors.end(), [](const factor &a, const factor &b) {
        const int da = MultiPoly::total_degree(a.e);
        const int db = MultiPoly::total_degree(b.e);
        if (da != db) {
            return da < db;
        }
        if (a.e != b.e) {
            return a.e < b.e;
        }
        return a.sign > b.sign;
    });

    MultiPoly single_loops = MultiPoly::constant(R, D, 1);
    for (int j = 0; j < R; ++j) {
        single_loops = single_loops * (MultiPoly::constant(R, D, 1) + MultiPoly::variable(R, D, j));
    }
    MultiPoly lhs = single_loops;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Integer e = detail::bump(factors[i].exponent, opts, i);
        if (e != 0) {
            lhs = lhs * binomial_power(R, D, factors[i].e, factors[i].sign, e);
        }
    }
    rep.first_mismatch = detail::compare(lhs, single_loops);
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"factors", factors.size()}, {"classes", to_json(classes)}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// P_{r,n} = prod_{N=r}^{n} (1+z^N)^{theta+}(1-z^N)^{theta-} against
/// prod_{j=floor(n/2)+1}^{n} (1-z^{2j})^{theta+(j)}, compared exactly through
/// cyclotomic factorisation and, when small enough, by dense expansion.
/// Factor order: N ascending, (1+) before (1-).
inline VerificationReport verify_partial_product(int r, int n, const VerifyOptions &opts = {}, std::int64_t dense_degree_limit = 8000)
{
    require(r >= 2 && n >= 2 * r, "verify_partial_product: need r >= 2, n >= 2r");
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "partial_product";
    rep.params = json{{"r", r}, {"n", n}};

    std::map<int, std::pair<Integer, Integer>> theta;
    json theta_audit = json::array();
    for (int N = r; N <= n; ++N) {
        theta[N] = {counting::theta_plus(N, r), counting::theta_minus(N, r)};
        theta_audit.push_back(json{{"N", N}, {"plus", to_json(theta[N].first)}, {"minus", to_json(theta[N].second)}});
    }

    detail::cyclotomic_product lhs;
    detail::cyclotomic_product rhs;
    Integer degree = 0;
    std::size_t idx = 0;
    std::vector<std::tuple<int, int, Integer>> lhs_factors; // (k, sign, exponent)
    for (int N = r; N <= n; ++N) {
        const Integer ep = detail::bump(theta[N].first, opts, idx++);
        const Integer em = detail::bump(theta[N].second, opts, idx++);
        lhs.multiply_one_plus(N, ep);
        lhs.multiply_one_minus(N, em);
        lhs_factors.emplace_back(N, +1, ep);
        lhs_factors.emplace_back(N, -1, em);
        degree += N * (ep + em);
    }
    for (int j = n / 2 + 1; j <= n; ++j) {
        rhs.multiply_one_minus(2 * j, theta.count(j) ? theta[j].first : counting::theta_plus(j, r));
    }

    json routes = json::array({"cyclotomic"});
    for (const auto &[d, e] : lhs.factors()) {
        const auto it = rhs.factors().find(d);
        const Integer other = it == rhs.factors().end() ? Integer(0) : it->second;
        if (e != other) {
            rep.first_mismatch = Mismatch{"Phi_" + std::to_string(d), e.str(), other.str()};
            break;
        }
    }
    if (!rep.first_mismatch) {
        for (const auto &[d, e] : rhs.factors()) {
            if (!lhs.factors().count(d)) {
                rep.first_mismatch = Mismatch{"Phi_" + std::to_string(d), "0", e.str()};
                break;
            }
        }
    }

    if (degree <= dense_degree_limit) {
        routes.push_back("dense");
        std::vector<Integer> a{1};
        for (const auto &[k, sign, e] : lhs_factors) {
            detail::multiply_dense(a, k, sign, e);
        }
        std::vector<Integer> b{1};
        for (int j = n / 2 + 1; j <= n; ++j) {
            detail::multiply_dense(b, 2 * j, -1, theta.count(j) ? theta[j].first : counting::theta_plus(j, r));
        }
        detail::trim(a);
        detail::trim(b);
        const std::size_t len = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < len && !rep.first_mismatch; ++k) {
            const Integer x = k < a.size() ? a[k] : Integer(0);
            const Integer y = k < b.size() ? b[k] : Integer(0);
            if (x != y) {
                rep.first_mismatch = Mismatch{"z^" + std::to_string(k), x.str(), y.str()};
            }
        }
    }
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"degree", to_json(degree)}, {"routes", routes}, {"theta", theta_audit}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// For every m with sum at most maxN: theta-(m) = theta+(m) - theta+(m/2) when
/// all m_i are even and N >= 2r, theta-(m) = theta+(m) otherwise. Class counts
/// come from the census. Factor order: N ascending, m lexicographic.
inline VerificationReport verify_theorem32(int r, int maxN, const VerifyOptions &opts = {})
{
    require(r >= 2 && maxN >= 1, "verify_theorem32: need r >= 2, maxN >= 1");
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "theorem32";
    rep.params = json{{"r", r}, {"maxN", maxN}};

    const auto exps = census_exponents(r, maxN, opts.budget);
    auto lookup = [&](const std::vector<std::int64_t> &m) {
        const auto it = exps.find(m);
        return it == exps.end() ? SignedClassCount{0, 0} : it->second;
    };
    std::size_t idx = 0;
    std::size_t vectors = 0;
    std::size_t even_branch = 0;
    std::size_t vacuous_case = 0;
    for (int N = r; N <= maxN && !rep.first_mismatch; ++N) {
        for (const auto &m : detail::positive_vectors(r, N)) {
            ++vectors;
            const SignedClassCount c = lookup(m);
            const Integer plus = detail::bump(c.plus, opts, idx++);
            const bool all_even = std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v % 2 == 0; });
            if (all_even && N < 2 * r) {
                ++vacuous_case;
            }
            Integer expected = plus;
            if (all_even && N >= 2 * r) {
                ++even_branch;
                std::vector<std::int64_t> half;
                for (auto v : m) {
                    half.push_back(v / 2);
                }
                expected = plus - lookup(half).plus;
            }
            if (c.minus != expected) {
                std::string name = "m=(";
                for (std::size_t i = 0; i < m.size(); ++i) {
                    name += (i ? "," : "") + std::to_string(m[i]);
                }
                rep.first_mismatch = Mismatch{name + ")", c.minus.str(), expected.str()};
                break;
            }
        }
    }
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"vectors", vectors}, {"even_branch", even_branch}, {"all_even_below_2r", vacuous_case}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// theta(N) by the Witt formula against the binomial sum over subgraphs and
/// the A(R, alpha) route; A(R, alpha) closed form against its double sum; for
/// R <= 3 also against brute-force necklace counts.
inline VerificationReport verify_witt_routes(int R, int maxN, const VerifyOptions &opts = {})
{
    require(R >= 1 && maxN >= 1, "verify_witt_routes: need R >= 1, maxN >= 1");
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "witt_routes";
    rep.params = json{{"R", R}, {"maxN", maxN}};

    json a_table = json::array();
    json theta_table = json::array();
    for (int a = 1; a <= maxN; ++a) {
        const Integer closed = counting::a_coeff(R, a, counting::a_route::closed);
        const Integer dbl = counting::a_coeff(R, a, counting::a_route::double_sum);
        a_table.push_back(json{{"alpha", a}, {"A", to_json(closed)}});
        if (closed != dbl && !rep.first_mismatch) {
            rep.first_mismatch = Mismatch{"A(" + std::to_string(R) + "," + std::to_string(a) + ")", closed.str(), dbl.str()};
        }
    }
    for (int N = 1; N <= maxN && !rep.first_mismatch; ++N) {
        const Integer witt = detail::bump(counting::theta_total(N, R, counting::total_route::witt), opts, static_cast<std::size_t>(N - 1));
        const Integer by_sub = counting::theta_total(N, R, counting::total_route::binomial_sum);
        theta_table.push_back(json{{"N", N}, {"theta", to_json(witt)}});
        if (witt != by_sub) {
            rep.first_mismatch = Mismatch{"theta(" + std::to_string(N) + ") binomial_sum", witt.str(), by_sub.str()};
            break;
        }
        if (N >= 2) {
            const Integer by_a = counting::theta_total_from_a(N, R);
            if (witt != by_a) {
                rep.first_mismatch = Mismatch{"theta(" + std::to_string(N) + ") A-route", witt.str(), by_a.str()};
                break;
            }
        }
        if (R <= 3) {
            const Integer necklaces = count_aperiodic_necklaces(R, N);
            if (witt != necklaces) {
                rep.first_mismatch = Mismatch{"theta(" + std::to_string(N) + ") necklaces", witt.str(), necklaces.str()};
                break;
            }
        }
    }
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"A", a_table}, {"theta", theta_table}, {"necklace_oracle", R <= 3}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

enum class denominator_kind { bouquet, ccw, signed_paths };

inline std::string to_string(denominator_kind k)
{
    switch (k) {
        case denominator_kind::bouquet:
            return "bouquet";
        case denominator_kind::ccw:
            return "ccw";
        case denominator_kind::signed_paths:
            return "signed";
    }
    return "?";
}

/// prod_n (1 - z^n)^{e(n)} = 1 - f(z) to degree D, with
/// bouquet: e = theta(n), f = R z; ccw: e = theta_r(n), f = f_r_ccw;
/// signed: e = dim L_n, f = f_r_signed. Factor order: n ascending.
inline VerificationReport verify_denominator(denominator_kind kind, int r_or_R, int D, const VerifyOptions &opts = {})
{
    require(D >= 1 && r_or_R >= 1, "verify_denominator: need D >= 1, r >= 1");
    if (kind == denominator_kind::signed_paths) {
        require(r_or_R >= 2, "signed denominator identity needs r >= 2");
    }
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "denominator_" + to_string(kind);
    rep.params = json{{kind == denominator_kind::bouquet ? "R" : "r", r_or_R}, {"D", D}};

    const TruncatedSeries one = TruncatedSeries::constant(D, 1);
    TruncatedSeries lhs = one;
    json exps = json::array();
    for (int n = 1; n <= D; ++n) {
        Integer e;
        switch (kind) {
            case denominator_kind::bouquet:
                e = counting::theta_total(n, r_or_R);
                break;
            case denominator_kind::ccw:
                e = counting::theta_ccw(n, r_or_R);
                break;
            case denominator_kind::signed_paths:
                e = counting::dim_L(n, r_or_R);
                break;
        }
        e = detail::bump(e, opts, static_cast<std::size_t>(n - 1));
        exps.push_back(to_json(e));
        if (e != 0) {
            lhs = lhs * series_pow(one - TruncatedSeries::monomial(D, n), e);
        }
    }
    TruncatedSeries rhs(D);
    switch (kind) {
        case denominator_kind::bouquet:
            rhs = one - TruncatedSeries::monomial(D, 1, r_or_R);
            break;
        case denominator_kind::ccw:
            rhs = one - f_r_ccw(r_or_R, D);
            break;
        case denominator_kind::signed_paths:
            rhs = one - f_r_signed(r_or_R, D);
            break;
    }
    rep.first_mismatch = detail::compare(lhs, rhs);
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"exponents", exps}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

/// exp(-g) = 1 - f to degree D, g built from Witt partition values.
/// The corruptible "factor" k is the coefficient of z^(k+1) in g.
inline VerificationReport verify_exp_log(int r, int D, counting::witt_mode mode, const VerifyOptions &opts = {})
{
    require(D >= 1 && r >= 1, "verify_exp_log: need D >= 1, r >= 1");
    if (mode == counting::witt_mode::signed_paths) {
        require(r >= 2, "signed exp/log relation needs r >= 2");
    }
    detail::stopwatch clock;
    VerificationReport rep;
    rep.identity = "exp_log";
    rep.params = json{{"r", r}, {"D", D}, {"mode", mode == counting::witt_mode::ccw ? "ccw" : "signed"}};

    TruncatedSeries g = witt_generating_series(r, D, mode);
    if (opts.corrupt_factor && static_cast<int>(*opts.corrupt_factor) + 1 <= D) {
        g[static_cast<int>(*opts.corrupt_factor) + 1] += 1;
    }
    const TruncatedSeries lhs = series_exp(-g);
    const TruncatedSeries f = mode == counting::witt_mode::ccw ? f_r_ccw(r, D) : f_r_signed(r, D);
    const TruncatedSeries rhs = TruncatedSeries::constant(D, 1) - f;
    rep.first_mismatch = detail::compare(lhs, rhs);
    rep.pass = !rep.first_mismatch;
    rep.audit = json{{"g", feynid::to_json(g)}};
    rep.elapsed_ms = clock.ms();
    return rep;
}

} // namespace feynid::identities
