#pragma once

// Path words on the bouquet graph. A word is a cyclic sequence of letters
// D_i^e (loop i traversed |e| times, orientation given by the sign of e) with
// no two cyclically adjacent letters on the same loop.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "feynid/counting.hpp"
#include "feynid/error.hpp"
#include "feynid/numeric.hpp"

namespace feynid
{

struct Letter {
    int loop = 1;
    int exponent = 1;

    friend constexpr auto operator<=>(const Letter &, const Letter &) = default;
};

namespace detail
{
class word_builder;
}

class PathWord
{
public:
    std::span<const Letter> letters() const noexcept
    {
        return letters_;
    }
    const Letter &operator[](std::size_t k) const noexcept
    {
        return letters_[k];
    }
    /// l
    std::size_t length() const noexcept
    {
        return letters_.size();
    }
    /// N = sum |e|
    std::int64_t total_length() const noexcept
    {
        return total_;
    }
    /// s
    int negative_count() const noexcept
    {
        return negatives_;
    }
    int min_loop() const noexcept
    {
        return min_loop_;
    }
    int max_loop() const noexcept
    {
        return max_loop_;
    }
    /// m_i: traversals of loop i
    std::int64_t multiplicity(int loop) const noexcept
    {
        return in_range(loop) ? multiplicity_[static_cast<std::size_t>(loop)] : 0;
    }
    /// n_i: letters on loop i
    int occurrences(int loop) const noexcept
    {
        return in_range(loop) ? occurrences_[static_cast<std::size_t>(loop)] : 0;
    }
    /// n = letters on loops other than the minimal traversed one
    int non_minimal_occurrences() const noexcept
    {
        return static_cast<int>(letters_.size()) - occurrences(min_loop_);
    }
    /// Traversed loops in ascending order.
    std::vector<int> loops() const
    {
        std::vector<int> out;
        for (int i = min_loop_; i <= max_loop_; ++i) {
            if (occurrences(i) > 0) {
                out.push_back(i);
            }
        }
        return out;
    }
    /// Multiplicities of the traversed loops in ascending loop order.
    std::vector<std::int64_t> multiplicity_vector() const
    {
        std::vector<std::int64_t> out;
        for (int i = min_loop_; i <= max_loop_; ++i) {
            if (occurrences(i) > 0) {
                out.push_back(multiplicity(i));
            }
        }
        return out;
    }
    bool all_positive() const noexcept
    {
        return negatives_ == 0;
    }

    friend bool operator==(const PathWord &a, const PathWord &b) noexcept
    {
        return a.letters_ == b.letters_;
    }

private:
    friend class detail::word_builder;

    PathWord() = default;

    bool in_range(int loop) const noexcept
    {
        return loop >= 0 && static_cast<std::size_t>(loop) < occurrences_.size();
    }

    void refresh()
    {
        total_ = 0;
        negatives_ = 0;
        min_loop_ = letters_.front().loop;
        max_loop_ = letters_.front().loop;
        for (const Letter &x : letters_) {
            min_loop_ = std::min(min_loop_, x.loop);
            max_loop_ = std::max(max_loop_, x.loop);
        }
        multiplicity_.assign(static_cast<std::size_t>(max_loop_) + 1, 0);
        occurrences_.assign(static_cast<std::size_t>(max_loop_) + 1, 0);
        for (const Letter &x : letters_) {
            const std::int64_t m = x.exponent < 0 ? -static_cast<std::int64_t>(x.exponent) : x.exponent;
            total_ += m;
            negatives_ += x.exponent < 0 ? 1 : 0;
            multiplicity_[static_cast<std::size_t>(x.loop)] += m;
            occurrences_[static_cast<std::size_t>(x.loop)] += 1;
        }
    }

    std::vector<Letter> letters_;
    std::vector<std::int64_t> multiplicity_;
    std::vector<int> occurrences_;
    std::int64_t total_ = 0;
    int negatives_ = 0;
    int min_loop_ = 1;
    int max_loop_ = 1;
};

namespace detail
{

// Sole constructor path for PathWord. Validation lives in validate_word; the
// enumerator uses the unchecked refill to avoid per-word allocation.
class word_builder
{
public:
    static PathWord make_unchecked(std::vector<Letter> letters)
    {
        PathWord w;
        w.letters_ = std::move(letters);
        w.refresh();
        return w;
    }
    static std::vector<Letter> &letters(PathWord &w) noexcept
    {
        return w.letters_;
    }
    static void refresh(PathWord &w)
    {
        w.refresh();
    }
};

} // namespace detail

inline PathWord validate_word(std::span<const Letter> letters)
{
    if (letters.empty()) {
        throw error(errc::empty_word, "a word needs at least one letter");
    }
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (letters[k].loop < 1) {
            throw error(errc::invalid_loop, "loop index " + std::to_string(letters[k].loop) + " at position " + std::to_string(k + 1) + " is not positive");
        }
        if (letters[k].exponent == 0) {
            throw error(errc::zero_exponent, "zero exponent at position " + std::to_string(k + 1));
        }
    }
    const std::size_t l = letters.size();
    for (std::size_t k = 0; k + 1 < l; ++k) {
        if (letters[k].loop == letters[k + 1].loop) {
            throw error(errc::adjacent_same_loop, "letters " + std::to_string(k + 1) + " and " + std::to_string(k + 2) + " share loop " + std::to_string(letters[k].loop));
        }
    }
    if (l >= 2 && letters.front().loop == letters.back().loop) {
        throw error(errc::adjacent_same_loop, "first and last letters share loop " + std::to_string(letters.front().loop));
    }
    return detail::word_builder::make_unchecked(std::vector<Letter>(letters.begin(), letters.end()));
}

inline PathWord validate_word(std::initializer_list<Letter> letters)
{
    return validate_word(std::span<const Letter>(letters.begin(), letters.size()));
}

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

// Digits only, optional leading '-', no leading zeros, so that parse/format round-trips.
inline int parse_int(std::string_view s, bool allow_negative, std::string_view what)
{
    const std::string text(s);
    bool negative = false;
    if (allow_negative && !s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || (s.size() > 1 && s.front() == '0')) {
        throw error(errc::parse_error, "bad " + std::string(what) + " '" + text + "'");
    }
    int v = 0;
    for (char c : s) {
        v = v * 10 + (c - '0');
    }
    return negative ? -v : v;
}

} // namespace detail

/// Parses `loop:exponent` pairs separated by commas, e.g. "1:3,2:-1".
inline std::vector<Letter> parse_letters(std::string_view text)
{
    std::vector<Letter> out;
    if (detail::trim(text).empty()) {
        throw error(errc::empty_word, "empty word text");
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string_view pair = detail::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        const std::size_t colon = pair.find(':');
        if (colon == std::string_view::npos) {
            throw error(errc::parse_error, "expected loop:exponent, got '" + std::string(pair) + "'");
        }
        Letter x;
        x.loop = detail::parse_int(detail::trim(pair.substr(0, colon)), false, "loop");
        x.exponent = detail::parse_int(detail::trim(pair.substr(colon + 1)), true, "exponent");
        out.push_back(x);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline PathWord parse_word(std::string_view text)
{
    const auto letters = parse_letters(text);
    return validate_word(letters);
}

inline std::string format_word(const PathWord &w)
{
    std::string out;
    for (std::size_t k = 0; k < w.length(); ++k) {
        if (k != 0) {
            out += ',';
        }
        out += std::to_string(w[k].loop);
        out += ':';
        out += std::to_string(w[k].exponent);
    }
    return out;
}

/// Letter-rotation starting at position k.
inline PathWord rotate(const PathWord &w, std::size_t k)
{
    const auto src = w.letters();
    std::vector<Letter> out;
    out.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        out.push_back(src[(k + i) % src.size()]);
    }
    return detail::word_builder::make_unchecked(std::move(out));
}

namespace detail
{

struct rotation_profile {
    bool minimal = true;   // no rotation is lexicographically smaller
    std::size_t shift = 0; // smallest k > 0 with rotation k == word (l if none)
};

// Compares rotation k against rotation 0. Stops at the first smaller rotation;
// rotations past the first equal one repeat earlier ones.
inline rotation_profile profile(std::span<const Letter> a)
{
    const std::size_t l = a.size();
    for (std::size_t k = 1; k < l; ++k) {
        int cmp = 0;
        for (std::size_t i = 0; i < l; ++i) {
            const Letter &x = a[(k + i) % l];
            const Letter &y = a[i];
            if (x != y) {
                cmp = x < y ? -1 : 1;
                break;
            }
        }
        if (cmp < 0) {
            return {false, 0};
        }
        if (cmp == 0) {
            return {true, k};
        }
    }
    return {true, l};
}

inline std::size_t smallest_period_shift(std::span<const Letter> a)
{
    const std::size_t l = a.size();
    for (std::size_t k = 1; k < l; ++k) {
        if (l % k != 0) {
            continue;
        }
        bool same = true;
        for (std::size_t i = 0; i < l && same; ++i) {
            same = a[(k + i) % l] == a[i];
        }
        if (same) {
            return k;
        }
    }
    return l;
}

} // namespace detail

/// Lexicographically minimal letter rotation (loop, then exponent).
inline PathWord canonical_rotation(const PathWord &w)
{
    const auto a = w.letters();
    const std::size_t l = a.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < l; ++k) {
        for (std::size_t i = 0; i < l; ++i) {
            const Letter &x = a[(k + i) % l];
            const Letter &y = a[(best + i) % l];
            if (x != y) {
                if (x < y) {
                    best = k;
                }
                break;
            }
        }
    }
    return best == 0 ? w : rotate(w, best);
}

/// Largest g with w = u^g as a letter sequence.
inline int period(const PathWord &w)
{
    return static_cast<int>(w.length() / detail::smallest_period_shift(w.letters()));
}

/// A single letter D_i^e with |e| > 1 repeats the one-step path |e| times; every
/// other word is a primitive path exactly when its letter sequence is.
inline bool is_primitive_path(const PathWord &w)
{
    if (w.length() == 1) {
        return w.total_length() == 1;
    }
    return period(w) == 1;
}

struct CyclicClass {
    PathWord representative;
    int period = 1;
    std::size_t class_size = 1;
};

inline CyclicClass cyclic_class(const PathWord &w)
{
    const int g = period(w);
    return CyclicClass{canonical_rotation(w), g, w.length() / static_cast<std::size_t>(g)};
}

struct all_words {
};
struct ccw_only {
};
struct multiplicity {
    std::vector<std::int64_t> m;
};
using word_filter = std::variant<all_words, ccw_only, multiplicity>;

inline constexpr std::uint64_t default_word_budget = 100'000'000;

namespace detail
{

// Compositions of N into l positive parts, colex order (last part most significant).
inline std::vector<std::vector<int>> compositions_colex(int N, int l)
{
    std::vector<std::vector<int>> out;
    std::vector<int> parts(static_cast<std::size_t>(l), 0);
    auto rec = [&](auto &self, int pos, int remaining) -> void {
        if (pos == 0) {
            parts[0] = remaining;
            out.push_back(parts);
            return;
        }
        for (int v = 1; v <= remaining - pos; ++v) {
            parts[static_cast<std::size_t>(pos)] = v;
            self(self, pos - 1, remaining - v);
        }
    };
    rec(rec, l - 1, N);
    return out;
}

// Loop-index sequences of length l over 1..r in lexicographic order: no equal
// neighbours (cyclically when l >= 2) and every loop present.
inline std::vector<std::vector<int>> loop_sequences(int r, int l)
{
    std::vector<std::vector<int>> out;
    if (l == 1) {
        if (r == 1) {
            out.push_back({1});
        }
        return out;
    }
    std::vector<int> seq(static_cast<std::size_t>(l), 0);
    std::vector<int> seen(static_cast<std::size_t>(r) + 1, 0);
    int distinct = 0;
    auto rec = [&](auto &self, int pos) -> void {
        if (pos == l) {
            if (distinct == r && seq.back() != seq.front()) {
                out.push_back(seq);
            }
            return;
        }
        // remaining slots must still be able to cover missing loops
        if (r - distinct > l - pos) {
            return;
        }
        for (int v = 1; v <= r; ++v) {
            if (pos > 0 && seq[static_cast<std::size_t>(pos - 1)] == v) {
                continue;
            }
            seq[static_cast<std::size_t>(pos)] = v;
            if (seen[static_cast<std::size_t>(v)]++ == 0) {
                ++distinct;
            }
            self(self, pos + 1);
            if (--seen[static_cast<std::size_t>(v)] == 0) {
                --distinct;
            }
        }
    };
    rec(rec, 0);
    return out;
}

inline Integer scope_word_count(int r, int N, const word_filter &filter)
{
    if (r == 1) {
        return 1;
    }
    if (std::holds_alternative<ccw_only>(filter)) {
        return counting::ccw_word_total(r, N);
    }
    return counting::word_total(r, N);
}

inline void check_scope(int r, int N, const word_filter &filter, std::uint64_t budget)
{
    require(r >= 1, "loop count r must be >= 1");
    require(N >= 1, "total length N must be >= 1");
    if (N < r) {
        throw error(errc::infeasible_scope, "cannot traverse " + std::to_string(r) + " loops in length " + std::to_string(N));
    }
    if (const auto *m = std::get_if<multiplicity>(&filter)) {
        if (m->m.size() != static_cast<std::size_t>(r)) {
            throw error(errc::infeasible_scope, "multiplicity vector must have exactly r entries");
        }
        std::int64_t sum = 0;
        for (auto v : m->m) {
            if (v <= 0) {
                throw error(errc::infeasible_scope, "every loop must be traversed at least once");
            }
            sum += v;
        }
        if (sum != N) {
            throw error(errc::infeasible_scope, "multiplicities do not sum to N");
        }
    }
    const Integer count = scope_word_count(r, N, filter);
    if (count > budget) {
        throw error(errc::scope_too_large, "scope needs " + count.str() + " words, budget is " + std::to_string(budget));
    }
}

} // namespace detail

/// Streams every valid word on loops 1..r of total length N matching the filter,
/// each exactly once, in a fixed order: word length l ascending, loop sequence
/// lexicographic, exponent magnitudes in colex order, then sign patterns as a
/// binary counter (bit k set = letter k reversed). For r = 1 only D_1^N is
/// emitted. The visitor receives a reference that is only valid during the call.
template <typename Visitor>
void enumerate_words(int r, int N, const word_filter &filter, Visitor &&visit, std::uint64_t budget = default_word_budget)
{
    detail::check_scope(r, N, filter, budget);
    const bool positive_only = r == 1 || std::holds_alternative<ccw_only>(filter);
    const auto *mult = std::get_if<multiplicity>(&filter);

    PathWord word = detail::word_builder::make_unchecked({Letter{1, 1}});
    auto &buf = detail::word_builder::letters(word);
    std::vector<std::int64_t> per_loop(static_cast<std::size_t>(r) + 1, 0);

    const int max_l = r == 1 ? 1 : N;
    for (int l = r; l <= max_l; ++l) {
        const auto sequences = detail::loop_sequences(r, l);
        if (sequences.empty()) {
            continue;
        }
        const auto comps = detail::compositions_colex(N, l);
        const std::uint64_t patterns = positive_only ? 1 : (std::uint64_t{1} << l);
        buf.assign(static_cast<std::size_t>(l), Letter{});
        for (const auto &seq : sequences) {
            for (const auto &comp : comps) {
                if (mult != nullptr) {
                    std::fill(per_loop.begin(), per_loop.end(), 0);
                    for (int k = 0; k < l; ++k) {
                        per_loop[static_cast<std::size_t>(seq[k])] += comp[k];
                    }
                    bool match = true;
                    for (int i = 1; i <= r && match; ++i) {
                        match = per_loop[static_cast<std::size_t>(i)] == mult->m[static_cast<std::size_t>(i - 1)];
                    }
                    if (!match) {
                        continue;
                    }
                }
                for (std::uint64_t bits = 0; bits < patterns; ++bits) {
                    for (int k = 0; k < l; ++k) {
                        buf[static_cast<std::size_t>(k)].loop = seq[static_cast<std::size_t>(k)];
                        buf[static_cast<std::size_t>(k)].exponent = ((bits >> k) & 1u) ? -comp[static_cast<std::size_t>(k)] : comp[static_cast<std::size_t>(k)];
                    }
                    detail::word_builder::refresh(word);
                    visit(static_cast<const PathWord &>(word));
                }
            }
        }
    }
}

inline std::vector<PathWord> collect_words(int r, int N, const word_filter &filter, std::uint64_t budget = default_word_budget)
{
    std::vector<PathWord> out;
    enumerate_words(r, N, filter, [&](const PathWord &w) { out.push_back(w); }, budget);
    return out;
}

} // namespace feynid
