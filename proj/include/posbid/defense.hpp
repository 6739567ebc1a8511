// SPDX-License-Identifier: MIT
//
// The recommended defender bid multiset for every budget-ratio regime.
#pragma once

#include "posbid/bid_profile.hpp"
#include "posbid/equilibrium.hpp"
#include "posbid/rational.hpp"

#include <vector>

namespace posbid {

// A fully described defender strategy.  bids is ascending and sums to at
// most beta (exactly beta except in degenerate regimes); the three counts
// partition it by role:
//   zero_count          leading zero bids (conceded objects),
//   proportional_count  the arithmetic tier 2 i beta / (m (m + 1)), i = 1..m,
//   unbeatable_count    equal bids strictly above the adversary's whole
//                       budget beta * ratio.
struct BidConstruction {
    long n = 0;
    Rational beta;
    Rational ratio;
    Branch branch = Branch::BelowRange;
    Fidelity fidelity = Fidelity::Proved;
    long zero_count = 0;
    long proportional_count = 0;
    long unbeatable_count = 0;
    std::vector<Rational> bids;  // ascending, size n

    BidProfile to_profile() const { return BidProfile::from_bids(bids); }
};

// Builds the recommended defense for n objects at the given budget ratio.
// Branch selection mirrors equilibrium():
//   R <  1/n      equal unbeatable bids beta/n (anything works; adversary
//                 cannot reach any of them),
//   R == 1/n      one zero plus n-1 equal bids beta/(n-1), each strictly
//                 above beta * R (n == 1: the single bid beta),
//   R <= 2/(n+1)  zero_bid_count zeros plus equal strictly-unbeatable bids,
//   R <= n        n - m zeros plus the proportional tier of size
//                 m = proportional_count(n, R),
//   R >  n        a single bid of beta plus zeros (the adversary can outbid
//                 any defense; value n regardless).
// Construction is O(n) and the bids are emitted already sorted.
// Requires n >= 1, ratio > 0, beta > 0.
BidConstruction optimal_bid_set(long n, const Rational& ratio, const Rational& beta = Rational(1));

}  // namespace posbid
