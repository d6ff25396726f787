// feynid: command-line front end for the path-counting library.
//
// Exit codes: 0 ok/pass, 2 usage error, 3 verification failure,
// 4 infeasible scope or budget exceeded.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "feynid/acceptance.hpp"
#include "feynid/census.hpp"
#include "feynid/counting.hpp"
#include "feynid/error.hpp"
#include "feynid/identities.hpp"
#include "feynid/json_io.hpp"
#include "feynid/series.hpp"
#include "feynid/signs.hpp"
#include "feynid/words.hpp"

namespace
{

using namespace feynid;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_fail = 3;
constexpr int exit_scope = 4;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json doc;
    std::optional<Table> table;
    int code = exit_ok;
};

std::string cell(const json &v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string rational_text(const Rational &q)
{
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

// Tables are emitted as-is; plain documents become one header row and one
// value row built from the top-level keys.
Table flatten(const json &doc)
{
    Table t;
    std::vector<std::string> row;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        t.columns.push_back(it.key());
        row.push_back(cell(it.value()));
    }
    t.rows.push_back(std::move(row));
    return t;
}

std::string render(const Output &out, const std::string &format)
{
    std::ostringstream os;
    if (format == "json") {
        os << out.doc.dump() << '\n';
        return os.str();
    }
    const Table t = out.table ? *out.table : flatten(out.doc);
    if (format == "csv") {
        auto line = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << (i ? "," : "") << csv_escape(cells[i]);
            }
            os << '\n';
        };
        line(t.columns);
        for (const auto &r : t.rows) {
            line(r);
        }
        return os.str();
    }
    // plain: aligned columns
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].size();
        for (const auto &r : t.rows) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    auto line = [&](const std::vector<std::string> &cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            text += cells[i];
            if (i + 1 < cells.size()) {
                text += std::string(width[i] - cells[i].size() + 2, ' ');
            }
        }
        os << text << '\n';
    };
    line(t.columns);
    for (const auto &r : t.rows) {
        line(r);
    }
    return os.str();
}

std::uint64_t parse_budget(const std::string &text, const std::string &source)
{
    try {
        std::size_t used = 0;
        if (text.empty() || text.front() == '-') {
            throw std::invalid_argument("negative");
        }
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || v == 0) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw usage_error(source + " must be a positive integer, got '" + text + "'");
    }
}

std::vector<std::int64_t> parse_vector(const std::string &text)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw usage_error("empty entry in multiplicity vector '" + text + "'");
        }
        item = item.substr(b, e - b + 1);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size() || used == 0) {
            throw usage_error("bad multiplicity entry '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw usage_error("empty multiplicity vector");
    }
    return out;
}

struct Settings {
    std::string format = "json";
    std::string out_path;
    std::optional<std::string> budget_flag;
    std::uint64_t budget = default_word_budget;
    int max_degree = 64;
    bool timing = false;
};

void check_degree(int D, const Settings &st)
{
    if (D > st.max_degree) {
        throw error(errc::scope_too_large, "degree " + std::to_string(D) + " exceeds the series cap " + std::to_string(st.max_degree) + " (raise with --max-degree)");
    }
}

Output report_output(const identities::VerificationReport &rep, const Settings &st)
{
    Output o;
    o.doc = identities::to_json(rep, st.timing);
    o.code = rep.pass ? exit_ok : exit_fail;
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact path-counting combinatorics on the bouquet graph"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings st;
    app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--out", st.out_path, "Also write the output to this file");
    app.add_option("--budget", st.budget_flag, "Word enumeration budget (also FEYNID_BUDGET)");
    app.add_option("--max-degree", st.max_degree, "Series degree cap")->check(CLI::Range(1, 4096));
    app.add_flag("--timing", st.timing, "Include elapsed_ms in verification reports");

    std::function<Output()> action;

    // sign
    std::string word_text;
    auto *sign_cmd = app.add_subcommand("sign", "Sign data of one word");
    sign_cmd->add_option("--word", word_text, "Word such as 1:3,2:2,1:1,3:2,2:3")->required();
    sign_cmd->callback([&] {
        action = [&] {
            const PathWord w = parse_word(word_text);
            return Output{to_json(signs::sign(w)), std::nullopt};
        };
    });

    // enumerate
    int r = 0;
    int N = 0;
    std::string filter_name = "all";
    std::string m_text;
    bool count_only = false;
    auto *enum_cmd = app.add_subcommand("enumerate", "List every word of a scope");
    enum_cmd->add_option("--r", r, "Loop count")->required()->check(CLI::Range(1, 64));
    auto *enum_N = enum_cmd->add_option("--N", N, "Total length")->check(CLI::Range(1, 100000));
    enum_cmd->add_option("--filter", filter_name, "all or ccw")->check(CLI::IsMember({"all", "ccw"}));
    auto *enum_m = enum_cmd->add_option("--m", m_text, "Multiplicity vector, e.g. 2,1");
    enum_N->excludes(enum_m);
    enum_cmd->add_flag("--count-only", count_only, "Report only the number of words");
    enum_cmd->callback([&] {
        if (enum_N->count() == 0 && enum_m->count() == 0) {
            throw usage_error("enumerate needs --N or --m");
        }
        action = [&] {
            word_filter filter = filter_name == "ccw" ? word_filter{ccw_only{}} : word_filter{all_words{}};
            int total = N;
            if (!m_text.empty()) {
                if (filter_name == "ccw") {
                    throw usage_error("--m cannot be combined with --filter ccw");
                }
                const auto m = parse_vector(m_text);
                std::int64_t sum = 0;
                for (auto v : m) {
                    sum += v;
                }
                if (sum > 100000 || sum < 1) {
                    throw error(errc::infeasible_scope, "multiplicities must be positive with a modest total");
                }
                total = static_cast<int>(sum);
                filter = multiplicity{m};
            }
            Output o;
            o.doc["r"] = r;
            o.doc["N"] = total;
            o.doc["filter"] = m_text.empty() ? filter_name : "m";
            Table t{{"index", "word", "l", "s"}, {}};
            json words = json::array();
            std::uint64_t count = 0;
            enumerate_words(
                r, total, filter,
                [&](const PathWord &w) {
                    ++count;
                    if (count_only) {
                        return;
                    }
                    const std::string text = format_word(w);
                    words.push_back(text);
                    t.rows.push_back({std::to_string(count), text, std::to_string(w.length()), std::to_string(w.negative_count())});
                },
                st.budget);
            o.doc["count"] = count;
            if (!count_only) {
                o.doc["words"] = std::move(words);
                o.table = std::move(t);
            }
            return o;
        };
    });

    // census
    auto *census_cmd = app.add_subcommand("census", "Brute-force class census");
    census_cmd->add_option("--r", r, "Loop count")->required()->check(CLI::Range(1, 64));
    auto *census_N = census_cmd->add_option("--N", N, "Total length")->check(CLI::Range(1, 100000));
    auto *census_m = census_cmd->add_option("--m", m_text, "Multiplicity vector, e.g. 2,2");
    census_N->excludes(census_m);
    census_cmd->callback([&] {
        if (census_N->count() == 0 && census_m->count() == 0) {
            throw usage_error("census needs --N or --m");
        }
        action = [&] {
            CensusOptions opts;
            opts.budget = st.budget;
            const Census c = m_text.empty() ? census(r, N, opts) : census(r, parse_vector(m_text), opts);
            Output o{to_json(c), std::nullopt};
            Table t{{"l", "s", "T", "count"}, {}};
            for (const auto &[key, count] : c.histogram) {
                t.rows.push_back({std::to_string(key.l), std::to_string(key.s), std::to_string(key.T), count.str()});
            }
            o.table = std::move(t);
            return o;
        };
    });

    // theta
    std::string theta_kind = "signed";
    std::string theta_route = "closed";
    int R = 0;
    auto *theta_cmd = app.add_subcommand("theta", "Closed-form class counts");
    theta_cmd->add_option("--kind", theta_kind, "signed (theta+/-), ccw (theta_r) or total (theta over R loops)")
        ->check(CLI::IsMember({"signed", "ccw", "total"}));
    auto *theta_r = theta_cmd->add_option("--r", r, "Loop count")->check(CLI::Range(1, 1000));
    auto *theta_R = theta_cmd->add_option("--R", R, "Bouquet size for --kind total")->check(CLI::Range(1, 1000));
    theta_cmd->add_option("--N", N, "Total length")->required()->check(CLI::Range(1, 5000));
    theta_cmd->add_option("--route", theta_route, "closed or word_sum (signed), witt or binomial_sum (total)")
        ->check(CLI::IsMember({"closed", "word_sum", "witt", "binomial_sum"}));
    theta_cmd->callback([&] {
        if (theta_kind == "total" ? theta_R->count() == 0 : theta_r->count() == 0) {
            throw usage_error(theta_kind == "total" ? "theta --kind total needs --R" : "theta needs --r");
        }
        action = [&] {
            Output o;
            if (theta_kind == "signed") {
                if (theta_route != "closed" && theta_route != "word_sum") {
                    throw usage_error("route must be closed or word_sum for --kind signed");
                }
                const auto route = theta_route == "word_sum" ? counting::theta_route::word_sum : counting::theta_route::closed_form;
                o.doc["theta_plus"] = to_json(counting::theta_plus(N, r, route));
                o.doc["theta_minus"] = to_json(counting::theta_minus(N, r));
            } else if (theta_kind == "ccw") {
                o.doc["theta_ccw"] = to_json(counting::theta_ccw(N, r));
            } else {
                if (theta_route != "closed" && theta_route != "witt" && theta_route != "binomial_sum") {
                    throw usage_error("route must be witt or binomial_sum for --kind total");
                }
                const auto route = theta_route == "binomial_sum" ? counting::total_route::binomial_sum : counting::total_route::witt;
                o.doc["theta"] = to_json(counting::theta_total(N, R, route));
            }
            return o;
        };
    });

    // witt
    int n = 0;
    auto *witt_cmd = app.add_subcommand("witt", "Witt partition values W(1..n)");
    witt_cmd->add_option("--r", r, "Loop count")->required()->check(CLI::Range(1, 1000));
    witt_cmd->add_option("--n", n, "Largest degree")->required()->check(CLI::Range(1, 2000));
    witt_cmd->callback([&] {
        action = [&] {
            Output o;
            o.doc["r"] = r;
            json values = json::array();
            Table t{{"n", "W_ccw", "W_signed"}, {}};
            for (int k = 1; k <= n; ++k) {
                const Rational ccw = counting::witt_partition(k, r, counting::witt_mode::ccw);
                const Rational sgn = counting::witt_partition(k, r, counting::witt_mode::signed_paths);
                values.push_back(json{{"n", k}, {"ccw", to_json(ccw)}, {"signed", to_json(sgn)}});
                t.rows.push_back({std::to_string(k), rational_text(ccw), rational_text(sgn)});
            }
            o.doc["values"] = std::move(values);
            o.table = std::move(t);
            return o;
        };
    });

    // dims
    auto *dims_cmd = app.add_subcommand("dims", "Graded dimensions and generator dimensions for N = 1..N");
    dims_cmd->add_option("--r", r, "Loop count (>= 2)")->required()->check(CLI::Range(2, 1000));
    dims_cmd->add_option("--N", N, "Largest degree")->required()->check(CLI::Range(1, 2000));
    dims_cmd->callback([&] {
        action = [&] {
            check_degree(N, st);
            const auto d_ccw = d_coeffs(f_r_ccw(r, N));
            const auto d_signed = d_coeffs(f_r_signed(r, N));
            Output o;
            o.doc["r"] = r;
            json rows = json::array();
            Table t{{"N", "dim_L", "theta_plus", "theta_minus", "theta_ccw", "d_ccw", "d_signed"}, {}};
            for (int k = 1; k <= N; ++k) {
                const Integer dim = counting::dim_L(k, r);
                const Integer tp = counting::theta_plus(k, r);
                const Integer tm = counting::theta_minus(k, r);
                const Integer tc = counting::theta_ccw(k, r);
                rows.push_back(json{{"N", k},
                                    {"dim_L", to_json(dim)},
                                    {"theta_plus", to_json(tp)},
                                    {"theta_minus", to_json(tm)},
                                    {"theta_ccw", to_json(tc)},
                                    {"d_ccw", to_json(d_ccw.at(k))},
                                    {"d_signed", to_json(d_signed.at(k))}});
                t.rows.push_back({std::to_string(k), dim.str(), tp.str(), tm.str(), tc.str(), d_ccw.at(k).str(), d_signed.at(k).str()});
            }
            o.doc["rows"] = std::move(rows);
            o.table = std::move(t);
            return o;
        };
    });

    // series
    std::string series_name;
    int D = 0;
    auto *series_cmd = app.add_subcommand("series", "Generating series truncated at degree D");
    series_cmd->add_option("--name", series_name, "f_ccw, f_signed, g_ccw or g_signed")
        ->required()
        ->check(CLI::IsMember({"f_ccw", "f_signed", "g_ccw", "g_signed"}));
    series_cmd->add_option("--r", r, "Loop count")->required()->check(CLI::Range(1, 1000));
    series_cmd->add_option("--D", D, "Degree bound")->required()->check(CLI::Range(0, 100000));
    series_cmd->callback([&] {
        action = [&] {
            check_degree(D, st);
            TruncatedSeries s(D);
            if (series_name == "f_ccw") {
                s = f_r_ccw(r, D);
            } else if (series_name == "f_signed") {
                s = f_r_signed(r, D);
            } else {
                s = witt_generating_series(r, D, series_name == "g_ccw" ? counting::witt_mode::ccw : counting::witt_mode::signed_paths);
            }
            Output o;
            o.doc["name"] = series_name;
            o.doc["r"] = r;
            const json body = to_json(s);
            o.doc["max_degree"] = body["max_degree"];
            o.doc["terms"] = body["terms"];
            Table t{{"degree", "coefficient"}, {}};
            for (int k = 0; k <= D; ++k) {
                if (s[k] != 0) {
                    t.rows.push_back({std::to_string(k), rational_text(s[k])});
                }
            }
            o.table = std::move(t);
            return o;
        };
    });

    // verify
    auto *verify_cmd = app.add_subcommand("verify", "Run an identity check");
    verify_cmd->require_subcommand(1);
    std::optional<std::size_t> corrupt;
    auto add_corrupt = [&](CLI::App *cmd) {
        cmd->add_option("--corrupt-factor", corrupt, "Add 1 to the exponent of this factor (harness self-test)");
    };
    auto options = [&] {
        identities::VerifyOptions v;
        v.budget = st.budget;
        v.corrupt_factor = corrupt;
        return v;
    };

    auto *v_feyn = verify_cmd->add_subcommand("feynman", "Truncated multivariate product identity");
    v_feyn->add_option("--R", R, "Loop count")->required()->check(CLI::Range(1, 8));
    v_feyn->add_option("--D", D, "Total-degree bound")->required()->check(CLI::Range(1, 64));
    add_corrupt(v_feyn);
    v_feyn->callback([&] { action = [&] { return report_output(identities::verify_feynman(R, D, options()), st); }; });

    auto *v_pp = verify_cmd->add_subcommand("partial_product", "Exact partial product identity");
    v_pp->add_option("--r", r, "Loop count")->required()->check(CLI::Range(2, 64));
    v_pp->add_option("--n", n, "Product length (>= 2r)")->required()->check(CLI::Range(1, 64));
    add_corrupt(v_pp);
    v_pp->callback([&] { action = [&] { return report_output(identities::verify_partial_product(r, n, options()), st); }; });

    int maxN = 0;
    auto *v_t32 = verify_cmd->add_subcommand("theorem32", "Multiplicity-vector theta relations on census data");
    v_t32->add_option("--r", r, "Loop count")->required()->check(CLI::Range(2, 16));
    v_t32->add_option("--maxN", maxN, "Largest total multiplicity")->required()->check(CLI::Range(1, 64));
    add_corrupt(v_t32);
    v_t32->callback([&] { action = [&] { return report_output(identities::verify_theorem32(r, maxN, options()), st); }; });

    auto *v_witt = verify_cmd->add_subcommand("witt_routes", "Agreement of the necklace-count routes");
    v_witt->add_option("--R", R, "Bouquet size")->required()->check(CLI::Range(1, 64));
    v_witt->add_option("--maxN", maxN, "Largest length")->required()->check(CLI::Range(1, 200));
    add_corrupt(v_witt);
    v_witt->callback([&] { action = [&] { return report_output(identities::verify_witt_routes(R, maxN, options()), st); }; });

    std::string den_kind;
    auto *v_den = verify_cmd->add_subcommand("denominator", "Denominator identity to degree D");
    v_den->add_option("--kind", den_kind, "bouquet, ccw or signed")->required()->check(CLI::IsMember({"bouquet", "ccw", "signed"}));
    auto *den_r = v_den->add_option("--r", r, "Loop count (ccw, signed)")->check(CLI::Range(1, 64));
    auto *den_R = v_den->add_option("--R", R, "Bouquet size (bouquet)")->check(CLI::Range(1, 64));
    v_den->add_option("--D", D, "Degree bound")->required()->check(CLI::Range(1, 100000));
    add_corrupt(v_den);
    v_den->callback([&] {
        const bool bouquet = den_kind == "bouquet";
        if ((bouquet ? den_R->count() : den_r->count()) == 0) {
            throw usage_error(bouquet ? "denominator --kind bouquet needs --R" : "denominator needs --r");
        }
        action = [&, bouquet] {
            check_degree(D, st);
            const auto kind = bouquet ? identities::denominator_kind::bouquet
                                      : den_kind == "ccw" ? identities::denominator_kind::ccw : identities::denominator_kind::signed_paths;
            return report_output(identities::verify_denominator(kind, bouquet ? R : r, D, options()), st);
        };
    });

    std::string mode_name = "ccw";
    auto *v_exp = verify_cmd->add_subcommand("exp_log", "exp(-g) = 1 - f to degree D");
    v_exp->add_option("--r", r, "Loop count")->required()->check(CLI::Range(1, 64));
    v_exp->add_option("--D", D, "Degree bound")->required()->check(CLI::Range(1, 100000));
    v_exp->add_option("--mode", mode_name, "ccw or signed")->check(CLI::IsMember({"ccw", "signed"}));
    add_corrupt(v_exp);
    v_exp->callback([&] {
        action = [&] {
            check_degree(D, st);
            const auto mode = mode_name == "ccw" ? counting::witt_mode::ccw : counting::witt_mode::signed_paths;
            return report_output(identities::verify_exp_log(r, D, mode, options()), st);
        };
    });

    std::string preset = "desk";
    auto *v_all = verify_cmd->add_subcommand("all", "Full acceptance suite");
    v_all->add_option("--preset", preset, "desk or smoke")->check(CLI::IsMember({"desk", "smoke"}));
    v_all->callback([&] {
        action = [&] {
            const auto scale = acceptance::scale_by_name(preset);
            const auto results = acceptance::run_acceptance(scale, [](const acceptance::CriterionResult &c) {
                std::cerr << "criterion " << c.id << ": " << (c.pass ? "pass" : "FAIL") << " (" << c.elapsed_ms << " ms)\n";
            });
            Output o;
            bool all_pass = true;
            json rows = json::array();
            Table t{{"criterion", "name", "status", "detail"}, {}};
            if (st.timing) {
                t.columns.insert(t.columns.begin() + 3, "elapsed_ms");
            }
            for (const auto &c : results) {
                all_pass = all_pass && c.pass;
                rows.push_back(acceptance::to_json(c, st.timing));
                std::vector<std::string> row{std::to_string(c.id), c.name, c.pass ? "pass" : "fail", c.detail};
                if (st.timing) {
                    row.insert(row.begin() + 3, std::to_string(c.elapsed_ms));
                }
                t.rows.push_back(std::move(row));
            }
            o.doc["preset"] = preset;
            o.doc["status"] = all_pass ? "pass" : "fail";
            o.doc["criteria"] = std::move(rows);
            o.table = std::move(t);
            o.code = all_pass ? exit_ok : exit_fail;
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    } catch (const usage_error &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (st.budget_flag) {
            st.budget = parse_budget(*st.budget_flag, "--budget");
        } else if (const char *env = std::getenv("FEYNID_BUDGET"); env != nullptr && *env != '\0') {
            st.budget = parse_budget(env, "FEYNID_BUDGET");
        }
        const Output out = action();
        const std::string text = render(out, st.format);
        std::cout << text << std::flush;
        if (!st.out_path.empty()) {
            std::ofstream file(st.out_path, std::ios::binary);
            file << text;
            if (!file) {
                std::cerr << "error: cannot write " << st.out_path << '\n';
                return exit_usage;
            }
        }
        return out.code;
    } catch (const usage_error &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const error &e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case errc::infeasible_scope:
            case errc::scope_too_large:
                return exit_scope;
            case errc::empty_word:
            case errc::zero_exponent:
            case errc::invalid_loop:
            case errc::adjacent_same_loop:
            case errc::parse_error:
            case errc::invalid_argument:
            case errc::negative_exponent_present:
            case errc::bad_constant_term:
            case errc::non_unit_constant_term:
                return exit_usage;
            default:
                return exit_fail;
        }
    }
}
