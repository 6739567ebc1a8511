// SPDX-License-Identifier: MIT
#include "posbid/best_response.hpp"

#include "posbid/errors.hpp"
#include "posbid/oracle.hpp"
#include "posbid/target_sets.hpp"

#include <utility>

namespace posbid {

namespace {

// Smallest positive delta of the form seed / j (j = 1, 2, ...) such that no
// lifted bid collides with a defender value.  Each candidate defender value
// rules out at most one j per base, so the loop terminates quickly.
Rational collision_free_delta(const BidProfile& defender, const Rational& seed,
                              const std::vector<Rational>& bases) {
    for (long j = 1;; ++j) {
        const Rational delta = seed / j;
        bool clean = true;
        for (const auto& base : bases) {
            if (defender.contains(base + delta)) {
                clean = false;
                break;
            }
        }
        if (clean) return delta;
    }
}

// Branch (a), many cheap defender bids: one bid close to the full budget
// already clears every defender value below it, and n-1 slivers keep the
// multiset at size n without touching the guarantee.
BestResponseReport single_overcut(const BidProfile& defender, const Rational& budget, long ell) {
    const long n = defender.size();
    BestResponseReport report;
    report.case_tag = "single-overcut";

    const Rational max_below = defender.bid(ell);  // largest value under the budget
    const Rational seed = (budget - max_below) / (n + 1);
    // The big bid budget - (n-1) delta stays above max_below for every j >= 1,
    // so it beats all ell cheap defender bids no matter which delta survives.
    for (long j = 1;; ++j) {
        const Rational delta = seed / j;
        const Rational big = budget - (n - 1) * delta;
        if (defender.contains(delta) || defender.contains(big)) continue;
        report.bids.assign(static_cast<std::size_t>(n - 1), delta);
        report.bids.push_back(big);
        return report;
    }
}

// Branch (a), few cheap defender bids: overcut the cheapest admissible pair
// of defender values whose indices sum to zero_bid_count, and lift the whole
// multiset clear of collisions.
BestResponseReport double_overcut(const BidProfile& defender, const Rational& budget, long ell,
                                  long ell1) {
    const long n = defender.size();
    BestResponseReport report;
    report.case_tag = "double-overcut";

    if (ell < 1 || 2 * ell < ell1)
        throw InvariantError("best-response/range",
                             "cheap-bid count escaped its provable bounds");
    long best = 0;
    Rational best_cost = defender.bid(ell) + defender.bid(ell1 - ell);
    for (long i = 1; i <= 2 * ell - ell1; ++i) {
        const Rational cost = defender.bid(ell - i) + defender.bid(ell1 - ell + i);
        if (cost < best_cost) {
            best = i;
            best_cost = cost;
        }
    }
    const Rational low = defender.bid(ell - best);
    const Rational high = defender.bid(ell1 - ell + best);
    const Rational seed = (budget - low - high) / (n + 1);
    if (!(seed > 0))
        throw InvariantError("best-response/headroom",
                             "cheapest admissible pair exhausts the budget");
    const Rational delta = collision_free_delta(defender, seed, {0, low, high});
    report.bids.assign(static_cast<std::size_t>(n - 2), delta);
    report.bids.push_back(low + delta);
    report.bids.push_back(high + delta);
    return report;
}

// Branches (b) and (c) share this tail: certify Property P, convert the
// target set to bids, and remember which construction fired.
BestResponseReport from_target_set(const BidProfile& defender, const Rational& ratio,
                                   const Rational& beta, const TargetSet& set,
                                   std::string case_tag) {
    const Feasibility feasibility = check_feasibility(set, defender, ratio, beta);
    if (!feasibility.feasible)
        throw InvariantError("best-response/property-p",
                             case_tag + " produced " + to_string(feasibility.failure));
    BestResponseReport report;
    report.case_tag = std::move(case_tag);
    report.bids = counter_bids(set, defender, ratio, beta);
    return report;
}

// Branch (b): the whole defender multiset is one block.
BestResponseReport whole_block(const BidProfile& defender, const Rational& ratio,
                               const Rational& beta) {
    const long n = defender.size();
    const Spectrum s = spectrum(ratio, n);

    if (s.rounded == make_rational(2, n + 1)) {
        // Quota boundary: the cheapest pair of indices summing to n (the
        // zero-index sentinel makes {n, 0} admissible) carries exactly the
        // required index mass.
        long best = 1;
        Rational best_cost = defender.bid(1) + defender.bid(n - 1);
        for (long i = 2; i <= n; ++i) {
            const Rational cost = defender.bid(i) + defender.bid(n - i);
            if (cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        const TargetSet set = TargetSet::of(n, {best, n - best});
        return from_target_set(defender, ratio, beta, set, "boundary-pair");
    }

    const BlockContext ctx(defender, n);
    if (2 * s.pairs + 2 <= n)
        return from_target_set(defender, ratio, beta, padded_pairs(ctx, s.pairs, s.rem),
                               "bridge");

    // Pair count maximal for odd n: the quota is a full block minus a small
    // trim h, re-derived from the remainder and checked before building.
    const long h = (n + 1) / 2 - s.rem;
    if (n % 2 == 0 || h <= 0 || 2 * h > n + 1)
        throw InvariantError("best-response/trim",
                             "trim size escaped its provable bounds");
    return from_target_set(defender, ratio, beta, trimmed_block(ctx, h), "trim");
}

// Branch (c): stacked blocks at ell = floor(n/R), with the block raised or
// split in two at the rounding boundaries.
BestResponseReport stacked(const BidProfile& defender, const Rational& ratio,
                           const Rational& beta, long* ell_used) {
    const long n = defender.size();
    const long ell = to_long_checked(floor_int(Rational(n) / ratio));
    const Spectrum s = spectrum(ratio, ell);
    if (s.whole < 1)
        throw InvariantError("best-response/case-split",
                             "whole part vanished although the ratio exceeds 1");
    *ell_used = ell;

    const long case1_top = to_long_checked(floor_int(s.rounded * ell)) + s.whole;
    const long case2_top = s.whole * (ell + 1) + 2 * s.pairs_up + (2 * s.rem_up) / (ell + 1);

    if (n <= case1_top) {
        const BlockContext ctx(defender, ell);
        const TargetSet set = pair_multiset(ctx, s.pairs).united(stacked_block(ctx, s.whole, s.rem));
        return from_target_set(defender, ratio, beta, set, "stack-pairs");
    }
    if (n <= case2_top) {
        const BlockContext ctx(defender, ell);
        const TargetSet set =
            shifted_pairs(ctx, s.pairs_up).united(stacked_block(ctx, s.whole, s.rem_up));
        return from_target_set(defender, ratio, beta, set, "stack-shift");
    }

    // Rounding boundary: n is pinned between the floor and the ceiling of the
    // next block's scaled quota.
    if (n != s.whole * (ell + 1) + 2 * s.pairs_up + 1)
        throw InvariantError("best-response/case-split",
                             "boundary case reached with an off-boundary n");
    const Rational scaled_up = rounded_ratio(ratio, ell + 1) * (ell + 1);
    if (n == to_long_checked(ceil_int(scaled_up))) {
        const Spectrum up = spectrum(ratio, ell + 1);
        const BlockContext ctx(defender, ell + 1);
        const TargetSet set =
            pair_multiset(ctx, up.pairs).united(stacked_block(ctx, up.whole, up.rem));
        *ell_used = ell + 1;
        return from_target_set(defender, ratio, beta, set, "stack-up");
    }
    if (n != to_long_checked(floor_int(scaled_up)))
        throw InvariantError("best-response/case-split",
                             "boundary n matches neither rounding of the scaled quota");

    const BlockContext ctx(defender, ell);
    const BoundaryPlans plans = boundary_plans(ctx, s);
    // Keep the explicit remainder index only while its bid is strictly
    // cheaper than the mass it buys; at equality the swapped plan's budget
    // argument applies verbatim.
    const Rational price_cap = 2 * (s.rem_up + s.gap) * beta / (ell * (ell + 1));
    if (defender.bid(n - ell + s.rem_up) < price_cap)
        return from_target_set(defender, ratio, beta, plans.with_rem, "boundary-keep");
    return from_target_set(defender, ratio, beta, plans.without_rem, "boundary-swap");
}

}  // namespace

BestResponseReport best_response(const BidProfile& defender, const Rational& ratio) {
    if (!(ratio > 0)) throw ValidationError("budget ratio must be positive");
    const Rational beta = defender.total();
    if (!(beta > 0)) throw ValidationError("defender must spend a positive total");

    const long n = defender.size();
    const Rational budget = beta * ratio;

    BestResponseReport report;
    bool oracle_route = false;
    if (ratio * n <= 1 || ratio > n) {
        // (d) Out-of-range ratios: the threshold oracle is exact here.
        const OracleResult exact = threshold_best_response(defender, ratio, beta);
        report.case_tag = "oracle";
        report.bids = exact.witness;
        report.guarantee = exact.value;
        report.ell_used = 0;
        oracle_route = true;
    } else if (ratio * (n + 1) <= 2) {
        // (a) Many zeros are optimal for the defender; the guarantee counts
        // how many cheap bids the adversary can always reach.
        const long ell1 = zero_bid_count(n, ratio);
        const long ell = defender.count_below(budget);
        report = ell >= ell1 ? single_overcut(defender, budget, ell)
                             : double_overcut(defender, budget, ell, ell1);
        report.ell_used = ell1;
        report.guarantee = make_rational(ell1, n);
    } else if (ratio <= 1) {
        report = whole_block(defender, ratio, beta);
        report.ell_used = n;
        report.guarantee = tier_value(n, ratio, n);
    } else {
        long ell_used = 0;
        report = stacked(defender, ratio, beta, &ell_used);
        report.ell_used = ell_used;
        report.guarantee = tier_value(n, ratio, to_long_checked(floor_int(Rational(n) / ratio)));
    }

    report.n = n;
    report.beta = beta;
    report.ratio = ratio;
    report.fidelity = Fidelity::Proved;

    if (static_cast<long>(report.bids.size()) != n)
        throw InvariantError("best-response/count", "constructed bid multiset has the wrong size");
    Rational total = 0;
    for (const auto& bid : report.bids) {
        total += bid;
        if (!oracle_route && defender.contains(bid))
            throw InvariantError("best-response/collision",
                                 "constructed bid collides with a defender bid");
    }
    if (total > budget)
        throw InvariantError("best-response/budget", "constructed bids exceed the budget");

    report.achieved = expected_win_exact(report.to_profile(), defender);
    if (report.achieved < report.guarantee)
        throw InvariantError("best-response/guarantee",
                             "exact expected win fell below the branch guarantee");
    return report;
}

}  // namespace posbid
