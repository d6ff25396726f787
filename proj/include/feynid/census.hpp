#pragma once

// Brute-force class census over every word of a scope. This is the oracle the
// closed-form counts are checked against.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "feynid/error.hpp"
#include "feynid/numeric.hpp"
#include "feynid/signs.hpp"
#include "feynid/words.hpp"

namespace feynid
{

struct HistogramKey {
    int l = 0;
    int s = 0;
    int T = 0;

    friend constexpr auto operator<=>(const HistogramKey &, const HistogramKey &) = default;
};

struct SignedClassCount {
    Integer plus;
    Integer minus;
};

struct Census {
    int r = 0;
    std::int64_t N = 0;
    std::vector<std::int64_t> m; // empty for a total-length scope
    Integer word_total;
    Integer theta_plus;
    Integer theta_minus;
    Integer ccw_classes;
    Integer periodic_classes;
    // (l, s, T) -> number of words; T counted cyclically (rotation invariant)
    std::map<HistogramKey, Integer> histogram;
    // filled when requested: theta_pm per multiplicity vector
    std::map<std::vector<std::int64_t>, SignedClassCount> by_multiplicity;
};

struct CensusOptions {
    std::uint64_t budget = default_word_budget;
    bool track_multiplicities = false;
};

namespace detail
{

inline Census run_census(int r, int N, const word_filter &filter, const CensusOptions &opts)
{
    check_scope(r, N, filter, opts.budget);
    Census c;
    c.r = r;
    c.N = N;
    if (const auto *m = std::get_if<multiplicity>(&filter)) {
        c.m = m->m;
    }
    // Per-word tallies fit comfortably in 64 bits: the scope check bounds the
    // word count by the budget before anything is enumerated.
    std::uint64_t words = 0;
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    std::uint64_t ccw = 0;
    std::uint64_t periodic = 0;
    // l, s and T are all bounded by the longest word length
    const auto dim = static_cast<std::size_t>(r == 1 ? 1 : N) + 2;
    std::vector<std::uint64_t> hist(dim * dim * dim, 0);
    std::map<std::vector<std::int64_t>, std::pair<std::uint64_t, std::uint64_t>> by_m;

    enumerate_words(
        r, N, filter,
        [&](const PathWord &w) {
            ++words;
            const auto l = w.length();
            const auto s = static_cast<std::size_t>(w.negative_count());
            const auto T = static_cast<std::size_t>(signs::cyclic_runs(w));
            ++hist[(l * dim + s) * dim + T];

            const auto prof = profile(w.letters());
            if (!prof.minimal) {
                return;
            }
            if (!is_primitive_path(w)) {
                ++periodic;
                return;
            }
            // canonical representative of a primitive class; it starts on loop min
            const int sgn = signs::sign_of_rotation(w, 0).sign;
            (sgn > 0 ? plus : minus) += 1;
            if (w.all_positive()) {
                ++ccw;
            }
            if (opts.track_multiplicities) {
                auto &slot = by_m[w.multiplicity_vector()];
                (sgn > 0 ? slot.first : slot.second) += 1;
            }
        },
        opts.budget);

    c.word_total = words;
    c.theta_plus = plus;
    c.theta_minus = minus;
    c.ccw_classes = ccw;
    c.periodic_classes = periodic;
    for (std::size_t l = 0; l < dim; ++l) {
        for (std::size_t s = 0; s < dim; ++s) {
            for (std::size_t T = 0; T < dim; ++T) {
                const auto v = hist[(l * dim + s) * dim + T];
                if (v != 0) {
                    c.histogram.emplace(HistogramKey{static_cast<int>(l), static_cast<int>(s), static_cast<int>(T)}, Integer(v));
                }
            }
        }
    }
    for (const auto &[key, counts] : by_m) {
        c.by_multiplicity.emplace(key, SignedClassCount{Integer(counts.first), Integer(counts.second)});
    }
    return c;
}

} // namespace detail

/// Census over all words of total length N on loops 1..r.
inline Census census(int r, int N, const CensusOptions &opts = {})
{
    return detail::run_census(r, N, all_words{}, opts);
}

/// Census restricted to one multiplicity vector (m_1, ..., m_r), each m_i > 0.
inline Census census(int r, const std::vector<std::int64_t> &m, const CensusOptions &opts = {})
{
    std::int64_t N = 0;
    for (auto v : m) {
        N += v;
    }
    if (N > 1'000'000) {
        throw error(errc::scope_too_large, "multiplicity vector too large");
    }
    return detail::run_census(r, static_cast<int>(N), multiplicity{m}, opts);
}

} // namespace feynid
