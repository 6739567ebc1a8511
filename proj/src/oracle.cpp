// SPDX-License-Identifier: MIT
#include "posbid/oracle.hpp"

#include "posbid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace posbid {
namespace {

// Flattened (slots, doubled weight, strictness flag) index for the tables.
struct DpIndex {
    long weights;  // 2 n^2 + 1 distinct doubled weights
    std::size_t at(long k, long w, int flag) const {
        return (static_cast<std::size_t>(k) * weights + w) * 2 + flag;
    }
};

struct BackPointer {
    int level = -1;
    int prev_flag = 0;
};

}  // namespace

std::vector<ThresholdLevel> threshold_levels(const BidProfile& defender) {
    const long n = defender.size();
    std::vector<ThresholdLevel> levels;
    levels.reserve(2 * static_cast<std::size_t>(n) + 1);
    if (!defender.contains(0))
        levels.push_back({0, ThresholdLevel::Mode::TieAt, 0, 0});

    const auto& bids = defender.ascending();
    for (std::size_t i = 0; i < bids.size(); ++i) {
        if (i > 0 && bids[i] == bids[i - 1]) continue;
        const Rational& v = bids[i];
        const long below = defender.count_below(v);
        const long at_most = defender.count_at_most(v);
        const BigInt tie_dbl = 2 * below + (at_most - below);
        const BigInt above_dbl = 2 * at_most;
        levels.push_back({v, ThresholdLevel::Mode::TieAt,
                          make_rational(tie_dbl, 2 * BigInt(n)), tie_dbl});
        levels.push_back({v, ThresholdLevel::Mode::JustAbove,
                          make_rational(above_dbl, 2 * BigInt(n)), above_dbl});
    }
    return levels;
}

OracleResult threshold_best_response(const BidProfile& defender, const Rational& ratio,
                                     const Rational& beta, long cap) {
    if (ratio <= 0) throw DomainError("budget ratio must be positive");
    if (beta <= 0) throw DomainError("defender budget must be positive");
    const long n = defender.size();
    if (n > cap) throw CapacityError("threshold search supports at most " +
                                     std::to_string(cap) + " objects, got " + std::to_string(n));

    const Rational budget = beta * ratio;
    const std::vector<ThresholdLevel> levels = threshold_levels(defender);
    const long max_w = 2 * n * n;
    const DpIndex ix{max_w + 1};

    // cost[k][w][f]: minimal total base cost of k levels with doubled weight
    // w; f records whether any JustAbove level is used (needs strict budget).
    const std::size_t cells = static_cast<std::size_t>(n + 1) * (max_w + 1) * 2;
    std::vector<std::optional<Rational>> cost(cells);
    std::vector<BackPointer> back(cells);
    cost[ix.at(0, 0, 0)] = Rational(0);

    std::uint64_t nodes = 0;
    for (long k = 0; k < n; ++k) {
        for (long w = 0; w <= max_w; ++w) {
            for (int f = 0; f < 2; ++f) {
                const auto& cur = cost[ix.at(k, w, f)];
                if (!cur) continue;
                for (std::size_t li = 0; li < levels.size(); ++li) {
                    const ThresholdLevel& level = levels[li];
                    const long nw = w + static_cast<long>(level.doubled_count);
                    const int nf =
                        f | (level.mode == ThresholdLevel::Mode::JustAbove ? 1 : 0);
                    ++nodes;
                    const Rational next_cost = *cur + level.base;
                    if (next_cost > budget) continue;  // no completion can recover
                    auto& slot = cost[ix.at(k + 1, nw, nf)];
                    if (!slot || next_cost < *slot) {
                        slot = next_cost;
                        back[ix.at(k + 1, nw, nf)] = {static_cast<int>(li), f};
                    }
                }
            }
        }
    }

    long best_w = -1;
    int best_f = 0;
    for (long w = max_w; w >= 0 && best_w < 0; --w) {
        const auto& tie_cost = cost[ix.at(n, w, 0)];
        if (tie_cost && *tie_cost <= budget) {
            best_w = w;
            best_f = 0;
            break;
        }
        const auto& mixed_cost = cost[ix.at(n, w, 1)];
        if (mixed_cost && *mixed_cost < budget) {
            best_w = w;
            best_f = 1;
            break;
        }
    }
    if (best_w < 0) throw InvariantError("oracle/search", "no feasible selection found");

    // Reconstruct the chosen levels.
    std::vector<const ThresholdLevel*> chosen;
    chosen.reserve(static_cast<std::size_t>(n));
    for (long k = n, w = best_w, f = best_f; k > 0; --k) {
        const BackPointer bp = back[ix.at(k, w, f)];
        if (bp.level < 0) throw InvariantError("oracle/backtrack", "broken backpointer chain");
        const ThresholdLevel& level = levels[static_cast<std::size_t>(bp.level)];
        chosen.push_back(&level);
        w -= static_cast<long>(level.doubled_count);
        f = bp.prev_flag;
    }

    // Materialize: ties bid their base exactly; JustAbove levels share one
    // delta small enough to stay below the next distinct defender value.
    Rational base_sum = 0;
    long above_count = 0;
    std::optional<Rational> min_gap;
    for (const ThresholdLevel* level : chosen) {
        base_sum += level->base;
        if (level->mode != ThresholdLevel::Mode::JustAbove) continue;
        ++above_count;
        const auto& bids = defender.ascending();
        auto it = std::upper_bound(bids.begin(), bids.end(), level->base);
        if (it != bids.end()) {
            const Rational gap = *it - level->base;
            if (!min_gap || gap < *min_gap) min_gap = gap;
        }
    }
    Rational delta = 0;
    if (above_count > 0) {
        const Rational headroom = (budget - base_sum) / (n + 1);
        if (headroom <= 0) throw InvariantError("oracle/headroom", "strict budget left no room");
        BigInt j = 1;
        if (min_gap) j = floor_int(Rational(headroom / *min_gap)) + 1;
        delta = headroom / Rational(j);
    }

    OracleResult result;
    result.nodes_explored = nodes;
    result.value = make_rational(best_w, 2 * BigInt(n));
    result.witness.reserve(static_cast<std::size_t>(n));
    for (const ThresholdLevel* level : chosen)
        result.witness.push_back(
            level->mode == ThresholdLevel::Mode::JustAbove ? Rational(level->base + delta)
                                                           : level->base);
    std::sort(result.witness.begin(), result.witness.end());

    Rational total = 0;
    for (const auto& b : result.witness) total += b;
    if (total > budget) throw InvariantError("oracle/budget", "witness exceeds the budget");
    if (expected_win_exact(BidProfile::from_bids(result.witness), defender) != result.value)
        throw InvariantError("oracle/witness", "witness does not evaluate to the search value");
    return result;
}

GridMinmaxResult grid_minmax(long n, const Rational& ratio, long grid_denominator,
                             long n_cap, long grid_cap) {
    if (n < 1) throw DomainError("object count must be >= 1");
    if (grid_denominator < 1) throw DomainError("grid denominator must be >= 1");
    if (ratio <= 0) throw DomainError("budget ratio must be positive");
    if (n > n_cap)
        throw CapacityError("grid min-max supports at most " + std::to_string(n_cap) +
                            " objects, got " + std::to_string(n));
    if (grid_denominator > grid_cap)
        throw CapacityError("grid min-max supports denominators up to " +
                            std::to_string(grid_cap) + ", got " +
                            std::to_string(grid_denominator));

    GridMinmaxResult result;
    std::vector<long> units(static_cast<std::size_t>(n), 0);
    std::vector<Rational> bids(static_cast<std::size_t>(n));
    bool found = false;

    // Ascending lexicographic enumeration of nondecreasing unit tuples with
    // sum <= grid_denominator; first strict minimum wins, so the argmin is
    // the lexicographically smallest minimizer.
    const std::function<void(long, long, long)> visit = [&](long pos, long lo, long left) {
        if (pos == n) {
            for (long i = 0; i < n; ++i)
                bids[static_cast<std::size_t>(i)] =
                    make_rational(units[static_cast<std::size_t>(i)], grid_denominator);
            const OracleResult best =
                threshold_best_response(BidProfile::from_bids(bids), ratio, 1, n);
            result.nodes_explored += best.nodes_explored + 1;
            if (!found || best.value < result.value) {
                found = true;
                result.value = best.value;
                result.argmin = bids;
            }
            return;
        }
        // Each of the remaining (n - pos) entries is at least u.
        for (long u = lo; u * (n - pos) <= left; ++u) {
            units[static_cast<std::size_t>(pos)] = u;
            visit(pos + 1, u, left - u);
        }
    };
    visit(0, 0, grid_denominator);

    if (!found) throw InvariantError("grid-minmax", "no candidate enumerated");
    return result;
}

McResult mc_simulate(const BidProfile& adversary, const BidProfile& defender,
                     long trials, std::uint64_t seed) {
    if (adversary.size() != defender.size())
        throw DomainError("adversary and defender must bid on the same number of objects");
    if (trials < 1) throw DomainError("trial count must be >= 1");

    std::mt19937_64 engine(seed);
    const auto draw_below = [&engine](std::uint64_t bound) {
        const std::uint64_t limit = bound * (std::numeric_limits<std::uint64_t>::max() / bound);
        std::uint64_t draw;
        do {
            draw = engine();
        } while (draw >= limit);
        return draw % bound;
    };

    const std::vector<Rational> attacker = adversary.ascending();
    const std::size_t n = attacker.size();
    std::vector<Rational> shuffled = defender.ascending();
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (long t = 0; t < trials; ++t) {
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(draw_below(i + 1));
            std::swap(shuffled[i], shuffled[j]);
        }
        std::int64_t won = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& a = attacker[i];
            if (a > shuffled[i]) {
                ++won;
            } else if (a == shuffled[i] && (engine() & 1u) != 0) {
                ++won;
            }
        }
        sum += won;
        sum_sq += won * won;
    }

    McResult result;
    const double t = static_cast<double>(trials);
    result.mean = static_cast<double>(sum) / t;
    if (trials > 1) {
        const double centered =
            static_cast<double>(sum_sq) - static_cast<double>(sum) * static_cast<double>(sum) / t;
        const double variance = std::max(0.0, centered / (t - 1.0));
        result.std_error = std::sqrt(variance / t);
    }
    return result;
}

}  // namespace posbid
