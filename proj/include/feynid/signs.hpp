#pragma once

// Sign of a closed path from its word. The loop-index sequence is split into
// maximal strictly ascending runs (T of them, t not containing the minimal
// traversed loop); the sign is (-1)^(N+n+s+t+1) = (-1)^(N+l+s+T+1).
// Loops of a subgraph are treated as relabelled 1..r in ascending order, which
// is order preserving, so only the minimal loop needs to be singled out.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "feynid/error.hpp"
#include "feynid/words.hpp"

namespace feynid::signs
{

struct Decomposition {
    std::vector<std::vector<int>> runs;
    int T = 0;
    int t = 0;
};

/// Splits seq into maximal strictly ascending runs; t counts runs without base_loop.
inline Decomposition decompose(std::span<const int> seq, int base_loop = 1)
{
    Decomposition d;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k == 0 || seq[k] <= seq[k - 1]) {
            d.runs.emplace_back();
        }
        d.runs.back().push_back(seq[k]);
    }
    d.T = static_cast<int>(d.runs.size());
    for (const auto &run : d.runs) {
        bool has_base = false;
        for (int v : run) {
            has_base = has_base || v == base_loop;
        }
        d.t += has_base ? 0 : 1;
    }
    return d;
}

inline std::vector<int> loop_sequence(const PathWord &w)
{
    std::vector<int> seq;
    seq.reserve(w.length());
    for (const Letter &x : w.letters()) {
        seq.push_back(x.loop);
    }
    return seq;
}

struct SignData {
    std::int64_t N = 0;
    int n = 0;
    int l = 0;
    int s = 0;
    int T = 0;
    int t = 0;
    int sign = 1;
};

/// Sign data of the rotation of w that starts at letter `offset`, which must lie
/// on the minimal traversed loop. No copy of the word is made.
inline SignData sign_of_rotation(const PathWord &w, std::size_t offset)
{
    const auto a = w.letters();
    const std::size_t l = a.size();
    const int base = w.min_loop();
    if (a[offset].loop != base) {
        throw error(errc::invalid_argument, "rotation must start on the minimal traversed loop");
    }
    SignData d;
    d.N = w.total_length();
    d.l = static_cast<int>(l);
    d.s = w.negative_count();
    d.n = w.non_minimal_occurrences();
    bool run_has_base = false;
    int prev = 0;
    for (std::size_t i = 0; i < l; ++i) {
        const int v = a[(offset + i) % l].loop;
        if (i == 0 || v <= prev) {
            if (i != 0 && !run_has_base) {
                ++d.t;
            }
            ++d.T;
            run_has_base = false;
        }
        run_has_base = run_has_base || v == base;
        prev = v;
    }
    if (!run_has_base) {
        ++d.t;
    }
    const int lemma = sign_power(d.N + d.n + d.s + d.t + 1);
    const int corollary = sign_power(d.N + d.l + d.s + d.T + 1);
    if (lemma != corollary) {
        throw error(errc::formula_mismatch, "sign formulas disagree for word " + format_word(w));
    }
    d.sign = lemma;
    return d;
}

inline std::size_t first_base_position(const PathWord &w)
{
    const auto a = w.letters();
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].loop == w.min_loop()) {
            return k;
        }
    }
    return 0;
}

/// Sign data for w, read from its first letter on the minimal traversed loop.
inline SignData sign(const PathWord &w)
{
    return sign_of_rotation(w, first_base_position(w));
}

/// Cyclic descent count, i.e. T of any rotation starting on the minimal loop.
inline int cyclic_runs(const PathWord &w)
{
    const auto a = w.letters();
    const std::size_t l = a.size();
    if (l == 1) {
        return 1;
    }
    int descents = 0;
    for (std::size_t k = 0; k < l; ++k) {
        descents += a[k].loop > a[(k + 1) % l].loop ? 1 : 0;
    }
    return descents;
}

struct PeriodicSignCheck {
    int sign = 1;
    int period = 1;
    int subword_sign = 1;
    bool holds = true;
};

/// A word u^g has sign -1 for even g and the sign of u for odd g.
inline PeriodicSignCheck periodic_sign_check(const PathWord &w)
{
    PeriodicSignCheck out;
    out.sign = sign(w).sign;
    out.period = period(w);
    const std::size_t j = w.length() / static_cast<std::size_t>(out.period);
    const auto a = w.letters();
    const PathWord u = validate_word(a.subspan(0, j));
    out.subword_sign = sign(u).sign;
    out.holds = out.period % 2 == 0 ? out.sign == -1 : out.sign == out.subword_sign;
    return out;
}

struct CrossingCounts {
    std::int64_t A1 = 0;
    std::vector<std::int64_t> B; // loops in ascending order after the minimal one
    std::int64_t C = 0;
    std::int64_t V = 0;
    std::vector<std::int64_t> V2; // type-2 counts per traversed loop, ascending
};

inline std::int64_t type2_crossings(std::int64_t reversed_visits)
{
    require(reversed_visits >= 0, "type2_crossings: count must be nonnegative");
    // sum_{x=1}^{s} (4x - 3)
    return 2 * reversed_visits * reversed_visits - reversed_visits;
}

/// Self-crossings of the normal curve for an all-positive word, read from its
/// first letter on the minimal loop. Checks (-1)^V = (-1)^(N+n+1).
inline CrossingCounts type1_crossings(const PathWord &w)
{
    if (!w.all_positive()) {
        throw error(errc::negative_exponent_present, "type-1 crossing count needs all exponents positive");
    }
    const auto a = w.letters();
    const std::size_t l = a.size();
    const std::size_t start = first_base_position(w);
    const auto loops = w.loops();
    std::vector<std::int64_t> seen(static_cast<std::size_t>(w.max_loop()) + 1, 0);
    std::vector<std::int64_t> per_loop(static_cast<std::size_t>(w.max_loop()) + 1, 0);
    CrossingCounts c;
    for (std::size_t i = 0; i < l; ++i) {
        const Letter &x = a[(start + i) % l];
        const auto idx = static_cast<std::size_t>(x.loop);
        const std::int64_t alpha = ++seen[idx];
        if (x.loop == w.min_loop()) {
            c.A1 += (alpha == 1 ? 1 : 2 * (alpha - 1)) * (x.exponent - 1);
            if (alpha >= 2) {
                c.C += x.exponent;
            }
        } else {
            per_loop[idx] += (2 * alpha - 1) * (x.exponent - 1);
        }
    }
    c.V = c.A1 + c.C;
    for (int i : loops) {
        c.V2.push_back(0);
        if (i != w.min_loop()) {
            c.B.push_back(per_loop[static_cast<std::size_t>(i)]);
            c.V += per_loop[static_cast<std::size_t>(i)];
        }
    }
    if (sign_power(c.V) != sign_power(w.total_length() + w.non_minimal_occurrences() + 1)) {
        throw error(errc::formula_mismatch, "type-1 crossing parity fails for word " + format_word(w));
    }
    return c;
}

/// Product over loops of (-1)^(V_i), V_i the type-2 count for that loop's reversed visits.
inline int type2_parity(const PathWord &w)
{
    std::vector<std::int64_t> reversed(static_cast<std::size_t>(w.max_loop()) + 1, 0);
    for (const Letter &x : w.letters()) {
        if (x.exponent < 0) {
            ++reversed[static_cast<std::size_t>(x.loop)];
        }
    }
    int parity = 1;
    for (std::int64_t s_i : reversed) {
        parity *= sign_power(type2_crossings(s_i));
    }
    return parity;
}

} // namespace feynid::signs
