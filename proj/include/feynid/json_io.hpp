#pragma once

// JSON encodings shared by the library reports and the CLI. Integers that fit
// in 64 bits are written as JSON numbers, larger ones as decimal strings.

#include <cstdint>
#include <limits>
#include <string>

#include "json.hpp"

#include "feynid/census.hpp"
#include "feynid/numeric.hpp"
#include "feynid/series.hpp"
#include "feynid/signs.hpp"

namespace feynid
{

using json = nlohmann::ordered_json;

inline json to_json(const Integer &v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(v.str());
}

/// {num, den}
inline json to_json(const Rational &q)
{
    json j;
    j["num"] = to_json(Integer(boost::multiprecision::numerator(q)));
    j["den"] = to_json(Integer(boost::multiprecision::denominator(q)));
    return j;
}

inline json to_json(const TruncatedSeries &s)
{
    json j;
    j["max_degree"] = s.max_degree();
    json terms = json::array();
    for (int k = 0; k <= s.max_degree(); ++k) {
        if (s[k] == 0) {
            continue;
        }
        json t;
        t["exponents"] = json::array({k});
        t["num"] = to_json(Integer(boost::multiprecision::numerator(s[k])));
        t["den"] = to_json(Integer(boost::multiprecision::denominator(s[k])));
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline json to_json(const MultiPoly &p)
{
    json j;
    j["max_degree"] = p.max_degree();
    json terms = json::array();
    for (const auto &[e, c] : p.terms()) {
        json t;
        t["exponents"] = e;
        t["num"] = to_json(c);
        t["den"] = 1;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline json to_json(const signs::SignData &d)
{
    json j;
    j["sign"] = d.sign;
    j["N"] = d.N;
    j["l"] = d.l;
    j["s"] = d.s;
    j["T"] = d.T;
    j["t"] = d.t;
    return j;
}

inline json to_json(const Census &c)
{
    json j;
    j["r"] = c.r;
    if (c.m.empty()) {
        j["scope"] = json{{"N", c.N}};
    } else {
        j["scope"] = json{{"m", c.m}};
    }
    j["word_total"] = to_json(c.word_total);
    j["theta_plus"] = to_json(c.theta_plus);
    j["theta_minus"] = to_json(c.theta_minus);
    j["ccw_classes"] = to_json(c.ccw_classes);
    json hist = json::array();
    for (const auto &[key, count] : c.histogram) {
        hist.push_back(json{{"l", key.l}, {"s", key.s}, {"T", key.T}, {"count", to_json(count)}});
    }
    j["histogram"] = std::move(hist);
    return j;
}

} // namespace feynid
