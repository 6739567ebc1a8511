// SPDX-License-Identifier: MIT
//
// posbid -- command-line surface over the position-randomized auction
// library.  One subcommand per operation; exact rationals in, exact
// rationals out.  Exit codes: 0 success, 1 usage, 2 invalid input,
// 3 violated internal invariant.

#include <CLI11.hpp>
#include <json.hpp>

#include "posbid/best_response.hpp"
#include "posbid/bid_profile.hpp"
#include "posbid/defense.hpp"
#include "posbid/equilibrium.hpp"
#include "posbid/errors.hpp"
#include "posbid/figures.hpp"
#include "posbid/oracle.hpp"
#include "posbid/rational.hpp"
#include "posbid/target_sets.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace posbid;

Rational rat(const std::string& text) { return parse_rational(text); }

std::vector<Rational> rat_list(const std::string& text) {
    std::vector<Rational> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) values.push_back(rat(item));
    if (values.empty()) throw ValidationError("expected a comma-separated list of rationals");
    return values;
}

// Reads a bid multiset from a file path or stdin ("-").  A leading '{'
// selects the JSON form {"bids": ["p/q", ...]}; anything else is parsed as
// whitespace-separated rational bid lines.
BidProfile read_profile(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream file(path);
        if (!file) throw ValidationError("cannot open bid file: " + path);
        std::ostringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    }
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw ValidationError("bid input is empty: " + path);

    std::vector<Rational> bids;
    if (text[start] == '{') {
        const json doc = json::parse(text, nullptr, true, true);
        if (!doc.contains("bids") || !doc["bids"].is_array())
            throw ValidationError("JSON bid input needs a \"bids\" array");
        for (const auto& item : doc["bids"]) bids.push_back(rat(item.get<std::string>()));
    } else {
        std::istringstream stream(text);
        bids = parse_bid_lines(stream);
    }
    return BidProfile::from_bids(std::move(bids));
}

json bids_json(const std::vector<Rational>& bids) {
    json array = json::array();
    for (const auto& bid : bids) array.push_back(format_rational(bid));
    return array;
}

std::string bids_line(const std::vector<Rational>& bids) {
    std::string line;
    for (const auto& bid : bids) {
        if (!line.empty()) line += ' ';
        line += format_rational(bid);
    }
    return line;
}

struct VerifyReporter {
    bool all_pass = true;

    void pass(const std::string& name) { std::cout << "PASS " << name << '\n'; }
    void fail(const std::string& name, const std::string& detail) {
        all_pass = false;
        std::cout << "FAIL " << name << ": " << detail << '\n';
    }
    void check(const std::string& name, const std::function<void()>& body) {
        try {
            body();
            pass(name);
        } catch (const std::exception& error) {
            fail(name, error.what());
        }
    }
};

void require(bool condition, const std::string& detail) {
    if (!condition) throw Error(detail);
}

// Deterministic pseudo-random bids for the verify sweep: a fixed linear
// congruential stream keeps the subcommand byte-identical across runs.
std::vector<Rational> verify_bids(long n, std::uint64_t& state) {
    const auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 33) % 97;
    };
    std::vector<Rational> bids;
    bids.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) bids.push_back(make_rational(static_cast<long>(next()) + 1, 97));
    return bids;
}

int run_verify(long n, const Rational& r) {
    VerifyReporter report;

    report.check("equilibrium-branch", [&] {
        const EquilibriumResult eq = equilibrium(n, r);
        require(eq.value >= 0 && eq.value <= n, "value escaped [0, n]");
    });

    report.check("spectrum-identities", [&] {
        for (long ell = 1; ell <= 50; ++ell) {
            const Spectrum s = spectrum(r, ell);
            const Rational down =
                s.whole + Rational(2 * s.pairs) / ell + Rational(2 * s.rem) / (ell * (ell + 1));
            const Rational up = s.whole + Rational(2 * s.pairs_up) / (ell + 1) +
                                Rational(2 * s.rem_up) / (ell * (ell + 1));
            require(down == s.rounded && up == s.rounded, "decompositions disagree");
            require(s.gap > 0 && s.gap <= 1, "gap escaped (0, 1]");
            const long diff = s.pairs_up - s.pairs;
            require(diff == 0 || diff == 1, "pair counts drifted");
            if (r > 1 && ell < 50) {
                const Spectrum next = spectrum(r, ell + 1);
                require(next.whole == s.whole, "whole part moved across blocks");
                require(next.pairs == s.pairs_up, "pair chain broke across blocks");
            }
        }
    });

    report.check("constructor-quotas", [&] {
        std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(n);
        for (int trial = 0; trial < 20; ++trial) {
            const BidProfile profile = BidProfile::from_bids(verify_bids(n, state));
            for (long ell = 1; ell <= n; ++ell) {
                const BlockContext ctx(profile, ell);
                for (long d = 0; 2 * d < ell; ++d) pair_multiset(ctx, d);
                for (long h = 0; 2 * h <= ell + 1; ++h) trimmed_block(ctx, h);
                for (long h = 0; h <= ell; ++h) stacked_block(ctx, 2, h);
                if (ell == n && 2 * 1 + 2 <= n)
                    for (long h = 0; h <= ell; ++h) padded_pairs(ctx, 1, h);
                if (ell < n)
                    for (long d = 0; 2 * d < ell + 1; ++d) shifted_pairs(ctx, d);
            }
        }
    });

    report.check("psi-properties", [&] {
        const BidConstruction psi = optimal_bid_set(n, r);
        require(static_cast<long>(psi.bids.size()) == n, "wrong bid count");
        Rational total = 0;
        for (const auto& bid : psi.bids) total += bid;
        require(total == psi.beta, "bids do not spend the budget");
    });

    const bool main_range = r * (n + 1) > 2 && r <= n;
    if (main_range && n <= 8) {
        report.check("oracle-tightness", [&] {
            const BidProfile psi = optimal_bid_set(n, r).to_profile();
            const OracleResult exact = threshold_best_response(psi, r);
            require(exact.value == equilibrium(n, r).value, "oracle disagrees with equilibrium");
        });
    } else {
        std::cout << "SKIP oracle-tightness (needs main-range R and n <= 8)\n";
    }

    report.check("constructive-guarantee", [&] {
        const BidProfile psi = optimal_bid_set(n, r).to_profile();
        const BestResponseReport response = best_response(psi, r);
        require(response.achieved >= response.guarantee, "guarantee missed");
    });

    return report.all_pass ? 0 : 3;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact solver for the two-bidder position-randomized auction"};
    app.require_subcommand(1);

    std::string r_text, beta_text = "1", format = "text";
    std::string a_path, d_path, bids_path;
    std::string r_list_text;
    long n = 0, trials = 0, n_max = 0, grid_denominator = 0;
    std::uint64_t seed = 0;
    int decimals = 0;

    int exit_code = 0;
    const auto act = [&](CLI::App* sub, std::function<int()> body) {
        sub->parse_complete_callback([&, body = std::move(body)] { exit_code = body(); });
    };

    auto* cmd_eq = app.add_subcommand("equilibrium", "Exact game value for (n, R)");
    cmd_eq->add_option("--n", n, "number of objects")->required();
    cmd_eq->add_option("--r", r_text, "budget ratio (rational)")->required();
    cmd_eq->add_option("--format", format, "text|json");
    act(cmd_eq, [&] {
        const EquilibriumResult eq = equilibrium(n, rat(r_text));
        if (format == "json") {
            json doc{{"value", format_rational(eq.value)},
                     {"branch", to_string(eq.branch)},
                     {"fidelity", to_string(eq.fidelity)}};
            std::cout << doc.dump() << '\n';
        } else {
            std::cout << format_rational(eq.value) << " (branch=" << to_string(eq.branch)
                      << ", fidelity=" << to_string(eq.fidelity) << ")\n";
        }
        return 0;
    });

    auto* cmd_psi = app.add_subcommand("psi", "Optimal defender bid multiset");
    cmd_psi->add_option("--n", n, "number of objects")->required();
    cmd_psi->add_option("--r", r_text, "budget ratio (rational)")->required();
    cmd_psi->add_option("--beta", beta_text, "defender budget (default 1)");
    cmd_psi->add_option("--format", format, "text|json");
    act(cmd_psi, [&] {
        const BidConstruction psi = optimal_bid_set(n, rat(r_text), rat(beta_text));
        if (format == "json") {
            json doc{{"n", psi.n},
                     {"r", format_rational(psi.ratio)},
                     {"beta", format_rational(psi.beta)},
                     {"branch", to_string(psi.branch)},
                     {"fidelity", to_string(psi.fidelity)},
                     {"bids", bids_json(psi.bids)}};
            std::cout << doc.dump() << '\n';
        } else {
            write_bid_lines(std::cout, psi.bids);
        }
        return 0;
    });

    auto* cmd_br = app.add_subcommand("best-response", "Constructive adversary response");
    cmd_br->add_option("--d", d_path, "defender bid file ('-' = stdin)")->required();
    cmd_br->add_option("--r", r_text, "budget ratio (rational)")->required();
    cmd_br->add_option("--format", format, "text|json");
    act(cmd_br, [&] {
        const BestResponseReport report = best_response(read_profile(d_path), rat(r_text));
        if (format == "json") {
            json doc{{"case", report.case_tag},
                     {"ell", report.ell_used},
                     {"guarantee", format_rational(report.guarantee)},
                     {"achieved", format_rational(report.achieved)},
                     {"fidelity", to_string(report.fidelity)},
                     {"bids", bids_json(report.bids)}};
            std::cout << doc.dump() << '\n';
        } else {
            std::cout << "achieved " << format_rational(report.achieved)
                      << " (case=" << report.case_tag << ", ell=" << report.ell_used
                      << ", guarantee=" << format_rational(report.guarantee)
                      << ", fidelity=" << to_string(report.fidelity) << ")\n"
                      << "bids: " << bids_line(report.bids) << '\n';
        }
        return 0;
    });

    auto* cmd_eval = app.add_subcommand("eval", "Exact expected win of A against D");
    cmd_eval->add_option("--a", a_path, "adversary bid file ('-' = stdin)")->required();
    cmd_eval->add_option("--d", d_path, "defender bid file ('-' = stdin)")->required();
    cmd_eval->add_option("--format", format, "text|json");
    act(cmd_eval, [&] {
        const Rational win = expected_win_exact(read_profile(a_path), read_profile(d_path));
        if (format == "json")
            std::cout << json{{"win", format_rational(win)}}.dump() << '\n';
        else
            std::cout << format_rational(win) << '\n';
        return 0;
    });

    auto* cmd_obr = app.add_subcommand("oracle-br", "Exact optimal adversary response");
    cmd_obr->add_option("--d", d_path, "defender bid file ('-' = stdin)")->required();
    cmd_obr->add_option("--r", r_text, "budget ratio (rational)")->required();
    cmd_obr->add_option("--beta", beta_text, "defender budget scale (default 1)");
    cmd_obr->add_option("--format", format, "text|json");
    act(cmd_obr, [&] {
        const BidProfile defender = read_profile(d_path);
        const OracleResult exact = threshold_best_response(defender, rat(r_text), rat(beta_text));
        if (format == "json") {
            json doc{{"value", format_rational(exact.value)},
                     {"witness", bids_json(exact.witness)},
                     {"nodes", exact.nodes_explored}};
            std::cout << doc.dump() << '\n';
        } else {
            std::cout << "value " << format_rational(exact.value) << '\n'
                      << "witness: " << bids_line(exact.witness) << '\n';
        }
        return 0;
    });

    auto* cmd_minmax = app.add_subcommand("oracle-minmax", "Gridded defender min-max search");
    cmd_minmax->add_option("--n", n, "number of objects")->required();
    cmd_minmax->add_option("--r", r_text, "budget ratio (rational)")->required();
    cmd_minmax->add_option("--grid-denominator", grid_denominator, "bid grid denominator")
        ->required();
    cmd_minmax->add_option("--format", format, "text|json");
    act(cmd_minmax, [&] {
        const GridMinmaxResult result = grid_minmax(n, rat(r_text), grid_denominator);
        if (format == "json") {
            json doc{{"value", format_rational(result.value)},
                     {"argmin", bids_json(result.argmin)},
                     {"nodes", result.nodes_explored}};
            std::cout << doc.dump() << '\n';
        } else {
            std::cout << "value " << format_rational(result.value) << '\n'
                      << "argmin: " << bids_line(result.argmin) << '\n';
        }
        return 0;
    });

    auto* cmd_sim = app.add_subcommand("simulate", "Seeded Monte Carlo of the auction");
    cmd_sim->add_option("--a", a_path, "adversary bid file ('-' = stdin)")->required();
    cmd_sim->add_option("--d", d_path, "defender bid file ('-' = stdin)")->required();
    cmd_sim->add_option("--trials", trials, "number of trials")->required();
    cmd_sim->add_option("--seed", seed, "RNG seed")->required();
    cmd_sim->add_option("--format", format, "text|json");
    act(cmd_sim, [&] {
        const McResult result =
            mc_simulate(read_profile(a_path), read_profile(d_path), trials, seed);
        char mean_text[64], se_text[64];
        std::snprintf(mean_text, sizeof mean_text, "%.9g", result.mean);
        std::snprintf(se_text, sizeof se_text, "%.9g", result.std_error);
        if (format == "json")
            std::cout << json{{"mean", mean_text}, {"stderr", se_text}}.dump() << '\n';
        else
            std::cout << "mean " << mean_text << " stderr " << se_text << '\n';
        return 0;
    });

    auto* cmd_ratios = app.add_subcommand("ratios", "Effective winning ratio grid as CSV");
    cmd_ratios->add_option("--n-max", n_max, "largest object count")->required();
    cmd_ratios->add_option("--r-list", r_list_text, "comma-separated budget ratios")->required();
    cmd_ratios->add_option("--decimals", decimals, "append decimal columns");
    act(cmd_ratios, [&] {
        write_ratio_csv(ratio_grid(n_max, rat_list(r_list_text)), std::cout, decimals);
        return 0;
    });

    auto* cmd_limits = app.add_subcommand("limits", "Large-n limits of the winning ratios");
    cmd_limits->add_option("--r", r_text, "budget ratio (rational)");
    cmd_limits->add_option("--r-list", r_list_text, "comma-separated budget ratios");
    act(cmd_limits, [&] {
        if (!r_list_text.empty()) {
            std::cout << "R,limit_E_A,limit_E_D\n";
            for (const auto& r : rat_list(r_list_text)) {
                const EffectiveRatios limits = limit_ratios(r);
                std::cout << format_rational(r) << ',' << format_rational(limits.adversary)
                          << ',' << format_rational(limits.defender) << '\n';
            }
            return 0;
        }
        if (r_text.empty()) throw ValidationError("limits needs --r or --r-list");
        const EffectiveRatios limits = limit_ratios(rat(r_text));
        std::cout << "E_A " << format_rational(limits.adversary) << '\n'
                  << "E_D " << format_rational(limits.defender) << '\n';
        return 0;
    });

    auto* cmd_verify = app.add_subcommand("verify", "Run the invariant suites for (n, R)");
    cmd_verify->add_option("--n", n, "number of objects")->required();
    cmd_verify->add_option("--r", r_text, "budget ratio (rational)")->required();
    act(cmd_verify, [&] { return run_verify(n, rat(r_text)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 1;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvariantError& error) {
        std::cerr << "invariant violation: " << error.what() << '\n';
        return 3;
    } catch (const ValidationError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const DomainError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const CapacityError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
}
