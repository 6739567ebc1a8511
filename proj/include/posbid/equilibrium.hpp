// SPDX-License-Identifier: MIT
//
// Closed-form game-value machinery for the randomized-position bidding game.
//
// Setup: n objects; the defender splits a budget of beta across n bids and
// is matched against the adversary by a uniformly random permutation; the
// adversary's budget is beta * ratio.  All results here are scale-invariant
// in beta, so functions take (n, ratio) only.  `ratio` is written R below.
#pragma once

#include "posbid/rational.hpp"

#include <string>

namespace posbid {

// Which closed-form regime of R the game value comes from.
enum class Branch {
    BelowRange,           // R < 1/n: adversary cannot win anything
    AtLowerBoundary,      // R == 1/n
    ZerosPlusUnbeatable,  // 1/n < R <= 2/(n+1): zeros plus unbeatable bids
    Proportional,         // 2/(n+1) < R <= n: proportional tier defense
    AboveRange,           // R > n: adversary can outbid everything
};

// Whether the reported value carries an in-repo proof (and oracle backing)
// or restates a published closed form we do not independently prove.
enum class Fidelity { Proved, Claimed };

std::string to_string(Branch branch);
std::string to_string(Fidelity fidelity);

struct EquilibriumResult {
    Rational value;  // expected number of objects the adversary wins
    Branch branch;
    Fidelity fidelity;
};

// Largest multiple of 2/(ell(ell+1)) strictly below `ratio`.  This is the
// natural bid increment when defending with a proportional block of size
// ell, so rounding R down to it quantizes the budget ratio onto that grid.
// Requires ell >= 1.
Rational rounded_ratio(const Rational& ratio, long ell);

// Game value achieved by conceding n - ell objects and defending a
// proportional block of size ell:
//     tier_value = n - ell + ell (ell + 1) rounded_ratio(R, ell) / (2 n).
// Requires n >= 1, 1 <= ell <= n.
Rational tier_value(long n, const Rational& ratio, long ell);

// Number of zero bids in the zeros-plus-unbeatable defense: the largest
// integer strictly below 2n - 2/R + 1.  Domain: n >= 2 and 1/n < R <= 2/(n+1).
long zero_bid_count(long n, const Rational& ratio);

// Size of the proportional tier: min(n, floor(n / R)).
// Domain: 2/(n+1) < R <= n (requires n >= 2 unless R == n == 1... n >= 1 and
// nonempty domain; for n == 1 the interval (1, 1] is empty, so DomainError).
long proportional_count(long n, const Rational& ratio);

// Exact integer decomposition of the rounded ratio on the block grid:
//     rounded = whole + 2 pairs    / ell       + 2 rem    / (ell (ell + 1))
//             = whole + 2 pairs_up / (ell + 1) + 2 rem_up / (ell (ell + 1))
// with whole = floor(rounded), both pair counts maximal, 0 <= rem <= ell,
// 0 <= rem_up <= ell - 1.  The two forms tile the same index mass
// rounded * ell (ell + 1) / 2 (always an integer) by complementary pairs of
// block indices summing to ell + 1, respectively to ell.
// `gap` = (ratio - rounded) * ell (ell + 1) / 2 lies in (0, 1].
// Requires ell >= 1 and ratio > 0.
struct Spectrum {
    Rational rounded;
    Rational gap;
    long whole;     // k
    long pairs;     // d
    long rem;       // h
    long pairs_up;  // d'
    long rem_up;    // h'
};

Spectrum spectrum(const Rational& ratio, long ell);

// Exact game value with branch and fidelity tags.  Requires n >= 1, R > 0.
EquilibriumResult equilibrium(long n, const Rational& ratio);

// Per-unit-budget efficiency of each side at equilibrium:
//     adversary = value * (R + 1) / (n R),
//     defender  = (n - value) * (R + 1) / n.
struct EffectiveRatios {
    Rational adversary;
    Rational defender;
};

EffectiveRatios effective_ratios(long n, const Rational& ratio);

// n -> infinity limits of effective_ratios at fixed R:
//     R >= 1: ((2R - 1)(R + 1) / (2 R^2), (R + 1) / (2 R))
//     R <= 1: ((R + 1) / 2,               (2 - R)(R + 1) / 2)
// The two formulas agree at R == 1.  Requires R > 0.
EffectiveRatios limit_ratios(const Rational& ratio);

}  // namespace posbid
