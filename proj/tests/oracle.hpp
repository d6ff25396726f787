#pragma once

// Independent brute-force oracle. It does not use the library's word model:
// a closed path is a cyclic sequence of N unit steps (loop, direction), and a
// loop can only be left and re-entered, never reversed in place. Classes are
// orbits under step rotation, so per-class counts are (aperiodic sequences)/N.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle
{

struct Step {
    int loop;
    int dir; // +1 or -1
};

struct Counts {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    std::int64_t ccw = 0;         // aperiodic classes with every step forward
    std::int64_t word_starts = 0; // sequences whose step 0 opens a letter
};

inline bool is_aperiodic(const std::vector<Step> &s)
{
    const std::size_t n = s.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool same = true;
        for (std::size_t i = 0; i < n && same; ++i) {
            same = s[i].loop == s[(i + d) % n].loop && s[i].dir == s[(i + d) % n].dir;
        }
        if (same) {
            return false;
        }
    }
    return true;
}

// Sign of the path: letters are maximal blocks of equal loop (cyclically);
// l letters, s reversed letters, T cyclic descents of the letter loops.
inline int path_sign(const std::vector<Step> &s)
{
    const std::size_t n = s.size();
    std::size_t start = 0;
    while (s[start].loop == s[(start + n - 1) % n].loop) {
        ++start; // terminates: at least two loops are used
    }
    std::vector<int> loops;
    int reversed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Step &x = s[(start + i) % n];
        if (i == 0 || x.loop != loops.back()) {
            loops.push_back(x.loop);
            reversed += x.dir < 0 ? 1 : 0;
        }
    }
    int descents = 0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        descents += loops[i] > loops[(i + 1) % loops.size()] ? 1 : 0;
    }
    const std::int64_t e = static_cast<std::int64_t>(n) + static_cast<std::int64_t>(loops.size()) + reversed + descents + 1;
    return e % 2 == 0 ? 1 : -1;
}

template <typename Fn>
void for_each_closed_path(int r, int N, Fn &&fn)
{
    std::vector<Step> s(static_cast<std::size_t>(N));
    std::vector<int> used(static_cast<std::size_t>(r) + 1, 0);
    auto rec = [&](auto &self, int pos) -> void {
        if (pos == N) {
            const Step &a = s.back();
            const Step &b = s.front();
            if (a.loop == b.loop && a.dir != b.dir) {
                return;
            }
            for (int i = 1; i <= r; ++i) {
                if (used[static_cast<std::size_t>(i)] == 0) {
                    return;
                }
            }
            fn(static_cast<const std::vector<Step> &>(s));
            return;
        }
        for (int loop = 1; loop <= r; ++loop) {
            for (int dir : {1, -1}) {
                if (pos > 0 && s[static_cast<std::size_t>(pos - 1)].loop == loop && s[static_cast<std::size_t>(pos - 1)].dir != dir) {
                    continue;
                }
                s[static_cast<std::size_t>(pos)] = Step{loop, dir};
                ++used[static_cast<std::size_t>(loop)];
                self(self, pos + 1);
                --used[static_cast<std::size_t>(loop)];
            }
        }
    };
    rec(rec, 0);
}

/// Class counts over all closed paths of length N using all of loops 1..r (r >= 2).
inline Counts closed_path_counts(int r, int N)
{
    Counts c;
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    std::int64_t ccw = 0;
    for_each_closed_path(r, N, [&](const std::vector<Step> &s) {
        if (s.back().loop != s.front().loop) {
            ++c.word_starts;
        }
        if (!is_aperiodic(s)) {
            return;
        }
        (path_sign(s) > 0 ? plus : minus) += 1;
        bool forward = true;
        for (const Step &x : s) {
            forward = forward && x.dir > 0;
        }
        ccw += forward ? 1 : 0;
    });
    c.plus = plus / N;
    c.minus = minus / N;
    c.ccw = ccw / N;
    return c;
}

/// theta_pm per multiplicity vector (steps per loop), for closed paths of length N.
inline std::map<std::vector<std::int64_t>, std::pair<std::int64_t, std::int64_t>> multiplicity_counts(int r, int N)
{
    std::map<std::vector<std::int64_t>, std::pair<std::int64_t, std::int64_t>> out;
    for_each_closed_path(r, N, [&](const std::vector<Step> &s) {
        if (!is_aperiodic(s)) {
            return;
        }
        std::vector<std::int64_t> m(static_cast<std::size_t>(r), 0);
        for (const Step &x : s) {
            ++m[static_cast<std::size_t>(x.loop - 1)];
        }
        auto &slot = out[m];
        (path_sign(s) > 0 ? slot.first : slot.second) += 1;
    });
    for (auto &kv : out) {
        kv.second.first /= N;
        kv.second.second /= N;
    }
    return out;
}

} // namespace oracle
