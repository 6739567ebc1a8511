// SPDX-License-Identifier: MIT
//
// Independent ground truth for the constructive machinery:
//
//  * threshold_best_response -- the exact optimal adversary response against
//    a known defender profile, searching bid multisets in threshold form
//    (each bid either ties a distinct defender value or sits infinitesimally
//    above one).  Any adversary bid is dominated by such a level: raising a
//    bid to just above the largest defender value it already beats never
//    lowers the win and never raises the cost.
//  * grid_minmax -- exhaustive defender-side minimization over a rational
//    grid, wrapping threshold_best_response.
//  * mc_simulate -- a seeded Monte Carlo simulation of the actual
//    position-randomized auction, for consistency checks against the exact
//    evaluator.
#pragma once

#include "posbid/bid_profile.hpp"
#include "posbid/rational.hpp"

#include <cstdint>
#include <vector>

namespace posbid {

// One admissible adversary bid shape against a fixed defender profile.
//   TieAt v:     bid exactly v; expected objects won = (below + eq/2) / n.
//   JustAbove v: bid v + delta for infinitesimal delta > 0; expected objects
//                won = at_most(v) / n; costs v plus an arbitrarily small
//                amount (the search treats the budget strictly).
struct ThresholdLevel {
    enum class Mode { TieAt, JustAbove };

    Rational base;
    Mode mode = Mode::TieAt;
    Rational win_weight;   // expected objects won per use of this level
    BigInt doubled_count;  // win_weight * 2n, an integer in [0, 2n]
};

// The level menu for `defender`: TieAt and JustAbove of every distinct
// defender value, plus TieAt(0) when 0 is not a defender value (the free
// "pass" level).  Sorted by base ascending, TieAt before JustAbove.
std::vector<ThresholdLevel> threshold_levels(const BidProfile& defender);

struct OracleResult {
    Rational value;                 // exact maximum expected objects won
    std::vector<Rational> witness;  // n concrete bids evaluating to `value`
    std::uint64_t nodes_explored = 0;
};

// Exact best response against `defender` with adversary budget beta * ratio.
// Maximizes over all multisets of n threshold levels subject to the budget:
// selections using at least one JustAbove level need total base cost
// strictly below the budget (so a positive delta exists); all-TieAt
// selections may spend it exactly.  The witness instantiates delta = g/j
// (g = headroom / (n + 1), j the smallest positive integer keeping every
// raised bid below the next distinct defender value) so that the witness
// evaluates to exactly `value` via expected_win_exact -- this is checked.
// Throws CapacityError when defender.size() > cap.
OracleResult threshold_best_response(const BidProfile& defender, const Rational& ratio,
                                     const Rational& beta = 1, long cap = 10);

struct GridMinmaxResult {
    Rational value;               // min over grid defenders of the oracle max
    std::vector<Rational> argmin; // ascending; lexicographically smallest
    std::uint64_t nodes_explored = 0;
};

// Exact min of threshold_best_response over all defender multisets of n bids
// drawn from {0, 1/g, ..., g/g} with total <= 1 (beta normalized to 1).
// Candidates are enumerated in ascending lexicographic order and ties keep
// the first minimizer, so the argmin is the lexicographically smallest
// witness.  Throws CapacityError when n > n_cap or grid_denominator > grid_cap.
GridMinmaxResult grid_minmax(long n, const Rational& ratio, long grid_denominator,
                             long n_cap = 4, long grid_cap = 12);

struct McResult {
    double mean = 0.0;       // average adversary objects won per trial
    double std_error = 0.0;  // sample standard deviation / sqrt(trials)
};

// Simulates `trials` auctions: each trial draws a uniform permutation of the
// defender bids (Fisher-Yates on a rejection-sampled mt19937_64 stream) and
// resolves each position, breaking ties with a fair coin from the same
// stream.  Deterministic given (inputs, seed).
McResult mc_simulate(const BidProfile& adversary, const BidProfile& defender,
                     long trials, std::uint64_t seed);

}  // namespace posbid
