// SPDX-License-Identifier: MIT
//
// Constructive adversary responses with exact winning guarantees.
//
// Against an arbitrary defender bid multiset, best_response() assembles an
// adversary bid multiset whose exact expected win provably meets the
// equilibrium target for the active ratio branch.  Unlike the verification
// oracle, which searches for the true optimum, this module builds its answer
// in closed form from the defender's own bids:
//
//   (a) 1/n < R <= 2/(n+1): either one budget-sized bid over a cheap tail of
//       defender bids, or a two-bid overcut of the cheapest admissible pair;
//       guarantee zero_bid_count / n.
//   (b) 2/(n+1) < R <= 1: a target-index set over the whole block -- the
//       cheapest complementary pair at the quota boundary, a padded pair
//       bridge, or a trimmed full block -- converted to bids; guarantee
//       tier_value(n, R, n).
//   (c) 1 < R <= n: stacked full blocks combined with pair or shifted-pair
//       fillers at block floor(n/R) or floor(n/R)+1, with a two-plan split at
//       the rounding boundary; guarantee tier_value(n, R, floor(n/R)).
//   (d) R <= 1/n or R > n: the threshold oracle already answers these two
//       regimes exactly, so the dispatcher delegates instead of inventing a
//       weaker construction; guarantee = achieved.
//
// On branches (a)-(c) the returned bids are disjoint from the defender's, so
// the win count needs no tie-splitting.  On the oracle branch (d) disjointness
// is deliberately not promised: the optimum can require ties (a single-object
// defender spending its whole budget can only be tied, never beaten).

#pragma once

#include "posbid/bid_profile.hpp"
#include "posbid/equilibrium.hpp"
#include "posbid/rational.hpp"

#include <string>
#include <vector>

namespace posbid {

// The constructed response together with its audit trail.
//
// case_tag names the construction that fired:
//   "single-overcut" | "double-overcut"            (branch a)
//   "boundary-pair" | "bridge" | "trim"            (branch b)
//   "stack-pairs" | "stack-shift" | "stack-up"
//     | "boundary-keep" | "boundary-swap"          (branch c)
//   "oracle"                                       (branch d)
//
// ell_used is the block size the construction targeted: zero_bid_count for
// branch (a), n for (b), floor(n/R) or floor(n/R)+1 for (c), 0 for (d).
//
// Invariants checked before returning (InvariantError on violation):
//   * bids.size() == n and sum(bids) <= beta * R;
//   * achieved == exact expected win of `bids` against the defender;
//   * achieved >= guarantee;
//   * on branches (a)-(c), no bid equals any defender bid.
struct BestResponseReport {
    long n = 0;
    Rational beta;
    Rational ratio;
    std::string case_tag;
    long ell_used = 0;
    Rational guarantee;
    Rational achieved;
    Fidelity fidelity = Fidelity::Proved;
    std::vector<Rational> bids;

    BidProfile to_profile() const { return BidProfile::from_bids(bids); }
};

// Builds the response for `defender` under budget ratio R (adversary budget
// = R * defender total).  Requires R > 0 and defender total > 0
// (ValidationError).  Branch (d) inherits the oracle's size cap
// (CapacityError above it).
BestResponseReport best_response(const BidProfile& defender, const Rational& ratio);

}  // namespace posbid
