#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "feynid/census.hpp"
#include "feynid/counting.hpp"
#include "feynid/words.hpp"
#include "oracle.hpp"

using namespace feynid;

namespace
{

errc code_of(auto &&fn)
{
    try {
        fn();
    } catch (const error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no feynid::error thrown";
    return errc::invalid_argument;
}

std::string text(const PathWord &w)
{
    return format_word(w);
}

} // namespace

TEST(Words, ValidateSectionTwoExample)
{
    const PathWord w = validate_word({{1, 3}, {2, 2}, {1, 1}, {3, 2}, {2, 3}});
    EXPECT_EQ(w.length(), 5u);
    EXPECT_EQ(w.total_length(), 11);
    EXPECT_EQ(w.occurrences(2), 2);
    EXPECT_EQ(w.occurrences(3), 1);
    EXPECT_EQ(w.non_minimal_occurrences(), 3);
    EXPECT_EQ(w.multiplicity(1), 4);
    EXPECT_EQ(w.multiplicity(2), 5);
    EXPECT_EQ(w.multiplicity(3), 2);
    EXPECT_EQ(w.negative_count(), 0);
    EXPECT_TRUE(w.all_positive());
}

TEST(Words, ValidateRejects)
{
    EXPECT_EQ(code_of([] { validate_word({{1, 2}, {1, 3}}); }), errc::adjacent_same_loop);
    EXPECT_EQ(code_of([] { validate_word({{1, 1}, {2, 0}}); }), errc::zero_exponent);
    EXPECT_EQ(code_of([] { validate_word(std::span<const Letter>{}); }), errc::empty_word);
    EXPECT_EQ(code_of([] { validate_word({{1, 1}, {2, 1}, {1, 1}}); }), errc::adjacent_same_loop); // cyclic
    EXPECT_EQ(code_of([] { validate_word({{0, 1}, {2, 1}}); }), errc::invalid_loop);
    EXPECT_NO_THROW(validate_word({{1, 5}}));
}

TEST(Words, ParseAndFormat)
{
    const PathWord w = parse_word(" 1:3, 2:-2 ,3:1 ");
    EXPECT_EQ(text(w), "1:3,2:-2,3:1");
    EXPECT_EQ(code_of([] { parse_word("1:3,"); }), errc::parse_error);
    EXPECT_EQ(code_of([] { parse_word("1:+3,2:1"); }), errc::parse_error);
    EXPECT_EQ(code_of([] { parse_word("01:3,2:1"); }), errc::parse_error);
    EXPECT_EQ(code_of([] { parse_word("1-3"); }), errc::parse_error);
    EXPECT_EQ(code_of([] { parse_word(""); }), errc::empty_word);
    EXPECT_EQ(code_of([] { parse_word("1:2,1:1"); }), errc::adjacent_same_loop);
    EXPECT_EQ(code_of([] { parse_word("1:0,2:1"); }), errc::zero_exponent);
    EXPECT_EQ(code_of([] { parse_word("1:3,2:-2,1:1"); }), errc::adjacent_same_loop);
}

TEST(Words, RoundTripOverEnumeratedWords)
{
    enumerate_words(3, 6, all_words{}, [](const PathWord &w) {
        const std::string t = format_word(w);
        ASSERT_EQ(format_word(parse_word(t)), t);
        ASSERT_EQ(parse_word(t), w);
    });
}

TEST(Words, CanonicalRotationExamples)
{
    EXPECT_EQ(text(canonical_rotation(parse_word("2:1,1:1"))), "1:1,2:1");
    EXPECT_EQ(text(canonical_rotation(parse_word("1:1,2:1"))), "1:1,2:1");
    EXPECT_EQ(text(canonical_rotation(parse_word("2:2,1:1,3:1"))), "1:1,3:1,2:2");
}

TEST(Words, PeriodExamples)
{
    EXPECT_EQ(period(parse_word("1:1,2:1,1:1,2:1")), 2);
    EXPECT_EQ(period(parse_word("1:2,2:1")), 1);
    EXPECT_EQ(period(parse_word("1:1,2:-1,1:1,2:-1,1:1,2:-1")), 3);
    EXPECT_TRUE(is_primitive_path(parse_word("1:1")));
    EXPECT_FALSE(is_primitive_path(parse_word("1:3")));
}

TEST(Words, CyclicClassProperties)
{
    enumerate_words(3, 7, all_words{}, [](const PathWord &w) {
        const CyclicClass c = cyclic_class(w);
        std::set<std::string> distinct;
        for (std::size_t k = 0; k < w.length(); ++k) {
            const PathWord rw = rotate(w, k);
            distinct.insert(format_word(rw));
            ASSERT_EQ(canonical_rotation(rw), c.representative);
        }
        ASSERT_EQ(distinct.size(), c.class_size);
        ASSERT_EQ(c.class_size * static_cast<std::size_t>(c.period), w.length());
        ASSERT_EQ(w.total_length() % c.period, 0);
        ASSERT_EQ(w.negative_count() % c.period, 0);
        ASSERT_EQ(c.representative[0].loop, w.min_loop());
        ASSERT_EQ(canonical_rotation(c.representative), c.representative);
    });
}

TEST(Words, PeriodOfPowers)
{
    for (const char *base : {"1:1,2:-1", "1:2,2:1,3:-1", "1:1,3:1,2:2"}) {
        const PathWord u = parse_word(base);
        std::vector<Letter> letters;
        for (int g = 1; g <= 4; ++g) {
            letters.insert(letters.end(), u.letters().begin(), u.letters().end());
            EXPECT_EQ(period(validate_word(letters)), g * period(u)) << base << " ^ " << g;
        }
    }
}

TEST(Words, EnumerateExamples)
{
    EXPECT_EQ(collect_words(2, 2, all_words{}).size(), 8u);
    EXPECT_EQ(code_of([] { collect_words(2, 1, all_words{}); }), errc::infeasible_scope);
    const auto one = collect_words(1, 3, ccw_only{});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(text(one[0]), "1:3");
    EXPECT_EQ(collect_words(1, 3, all_words{}).size(), 1u);
}

TEST(Words, EnumerationOrderIsFixed)
{
    const auto w = collect_words(2, 3, all_words{});
    ASSERT_EQ(w.size(), 16u);
    EXPECT_EQ(text(w[0]), "1:2,2:1");
    EXPECT_EQ(text(w[1]), "1:-2,2:1");
    EXPECT_EQ(text(w[2]), "1:2,2:-1");
    EXPECT_EQ(text(w[4]), "1:1,2:2");
    EXPECT_EQ(text(w[8]), "2:2,1:1");
    const auto again = collect_words(2, 3, all_words{});
    EXPECT_EQ(w, again);
}

TEST(Words, EnumerationEmitsEachWordOnceAndCoversAllLoops)
{
    for (int r = 2; r <= 3; ++r) {
        for (int N = r; N <= 7; ++N) {
            std::set<std::string> seen;
            enumerate_words(r, N, all_words{}, [&](const PathWord &w) {
                ASSERT_TRUE(seen.insert(format_word(w)).second);
                ASSERT_EQ(w.total_length(), N);
                ASSERT_EQ(w.loops().size(), static_cast<std::size_t>(r));
            });
        }
    }
}

TEST(Words, WordCountMatchesClosedForm)
{
    for (int r = 2; r <= 4; ++r) {
        for (int N = r; N <= 8; ++N) {
            std::uint64_t count = 0;
            enumerate_words(r, N, all_words{}, [&](const PathWord &) { ++count; });
            EXPECT_EQ(Integer(count), counting::word_total(r, N)) << "r=" << r << " N=" << N;
        }
    }
}

TEST(Words, WordCountMatchesStepOracle)
{
    // a word is a closed step sequence whose first step opens a letter
    for (int r = 2; r <= 3; ++r) {
        for (int N = r; N <= 7; ++N) {
            EXPECT_EQ(counting::word_total(r, N), Integer(oracle::closed_path_counts(r, N).word_starts)) << "r=" << r << " N=" << N;
        }
    }
}

TEST(Words, MultiplicityFilter)
{
    std::uint64_t total = 0;
    for (std::int64_t a = 1; a <= 5; ++a) {
        const auto words = collect_words(2, 6, multiplicity{{a, 6 - a}});
        for (const PathWord &w : words) {
            EXPECT_EQ(w.multiplicity(1), a);
            EXPECT_EQ(w.multiplicity(2), 6 - a);
        }
        total += words.size();
    }
    EXPECT_EQ(Integer(total), counting::word_total(2, 6));
    EXPECT_EQ(code_of([] { collect_words(2, 4, multiplicity{{4, 0}}); }), errc::infeasible_scope);
    EXPECT_EQ(code_of([] { collect_words(2, 4, multiplicity{{1, 2}}); }), errc::infeasible_scope);
}

TEST(Words, BudgetGuard)
{
    EXPECT_EQ(code_of([] { collect_words(3, 8, all_words{}, 1000); }), errc::scope_too_large);
    EXPECT_EQ(code_of([] { census(4, 20); }), errc::scope_too_large);
}

TEST(Census, Examples)
{
    const Census c2 = census(2, 2);
    EXPECT_EQ(c2.theta_plus, 2);
    EXPECT_EQ(c2.theta_minus, 2);
    EXPECT_EQ(c2.word_total, 8);
    const Census m11 = census(2, std::vector<std::int64_t>{1, 1});
    EXPECT_EQ(m11.theta_plus, 2);
    EXPECT_EQ(m11.theta_minus, 2);
    const Census c3 = census(2, 3);
    EXPECT_EQ(c3.theta_plus, 4);
    EXPECT_EQ(c3.theta_minus, 4);
    EXPECT_EQ(c3.word_total, 16);
}

TEST(Census, SingleLoop)
{
    const Census c = census(1, 1);
    EXPECT_EQ(c.theta_plus, 1);
    EXPECT_EQ(c.ccw_classes, 1);
    const Census c4 = census(1, 4);
    EXPECT_EQ(c4.word_total, 1);
    EXPECT_EQ(c4.theta_plus + c4.theta_minus, 0);
    EXPECT_EQ(c4.periodic_classes, 1);
}

TEST(Census, HistogramAndClassSizes)
{
    for (int r = 2; r <= 4; ++r) {
        for (int N = r; N <= 7; ++N) {
            const Census c = census(r, N);
            Integer hist = 0;
            for (const auto &[key, count] : c.histogram) {
                hist += count;
                EXPECT_GE(key.l, r);
                EXPECT_LE(key.s, key.l);
                EXPECT_GE(key.T, 1);
            }
            EXPECT_EQ(hist, c.word_total);
            // every word lies in exactly one class; primitive classes have l members
            Integer by_class = 0;
            enumerate_words(r, N, all_words{}, [&](const PathWord &w) {
                if (canonical_rotation(w) == w) {
                    by_class += cyclic_class(w).class_size;
                }
            });
            EXPECT_EQ(by_class, c.word_total);
        }
    }
}

TEST(Census, MatchesStepOracle)
{
    const std::vector<std::pair<int, int>> scopes = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {2, 9},
                                                     {3, 3}, {3, 4}, {3, 5}, {3, 6}, {3, 7}, {4, 4}, {4, 5}, {4, 6}};
    for (auto [r, N] : scopes) {
        const Census c = census(r, N);
        const oracle::Counts o = oracle::closed_path_counts(r, N);
        EXPECT_EQ(c.theta_plus, o.plus) << "r=" << r << " N=" << N;
        EXPECT_EQ(c.theta_minus, o.minus) << "r=" << r << " N=" << N;
        EXPECT_EQ(c.ccw_classes, o.ccw) << "r=" << r << " N=" << N;
    }
}

TEST(Census, MultiplicityMatchesStepOracle)
{
    for (auto [r, N] : {std::pair{2, 8}, std::pair{3, 7}}) {
        const auto expected = oracle::multiplicity_counts(r, N);
        CensusOptions opts;
        opts.track_multiplicities = true;
        const Census c = census(r, N, opts);
        ASSERT_EQ(c.by_multiplicity.size(), expected.size());
        for (const auto &[m, counts] : expected) {
            const auto it = c.by_multiplicity.find(m);
            ASSERT_NE(it, c.by_multiplicity.end());
            EXPECT_EQ(it->second.plus, counts.first);
            EXPECT_EQ(it->second.minus, counts.second);
            const Census single = census(r, m);
            EXPECT_EQ(single.theta_plus, counts.first);
            EXPECT_EQ(single.theta_minus, counts.second);
        }
    }
}

TEST(Census, CcwClassesOverBouquetGiveNecklaceCount)
{
    // union over subgraphs with binomial weights equals theta(N)
    for (int R = 1; R <= 3; ++R) {
        for (int N = 1; N <= 10; ++N) {
            Integer total = 0;
            for (int r = 1; r <= R && r <= N; ++r) {
                total += binomial(R, r) * census(r, N).ccw_classes;
            }
            EXPECT_EQ(total, counting::theta_total(N, R)) << "R=" << R << " N=" << N;
        }
    }
}
