// SPDX-License-Identifier: MIT
//
// Index multisets that describe which defender bids the adversary targets.
//
// Against a defender profile of size n, a "target set at block size ell" is
// a multiset of indices in {0, ..., ell}; index i stands for the defender
// bid bid(n - ell + i), so index ell is the largest bid, index 1 the
// smallest bid of the top-ell block, and index 0 the bid just below the
// block (the zero sentinel when ell == n).  Targeting index i with a bid
// slightly above bid(n - ell + i) wins, in expectation, i of the block's
// objects out of n.  The builders in this header assemble target sets whose
// index mass is high relative to their bid cost; they are the combinatorial
// core of the adversary's best response.
#pragma once

#include "posbid/bid_profile.hpp"
#include "posbid/equilibrium.hpp"
#include "posbid/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace posbid {

struct TargetSet {
    long ell = 0;
    std::vector<long> indices;  // ascending, each in [0, ell]

    // Validates the index range and sorts.  Throws DomainError.
    static TargetSet of(long ell, std::vector<long> indices);

    long size() const { return static_cast<long>(indices.size()); }

    // Multiset union with another set at the same block size.
    TargetSet united(const TargetSet& other) const;

    // Removes one copy of `index`; false when absent.
    bool remove_one(long index);
};

// Sum of the indices (the set's "mass": n * expected block objects won).
BigInt index_sum(const TargetSet& set);

// Sum of the targeted defender bids: sum over i in I of bid(n - ell + i).
Rational bid_sum(const BidProfile& profile, const TargetSet& set);

// Feasibility of converting a target set into an affordable adversary bid
// multiset.  The three conditions, checked in this order:
//   SizeOverflow    more indices than objects (|I| > n),
//   MassShortfall   index mass below rounded_ratio(R, ell) * ell(ell+1)/2,
//   BudgetOverrun   bid_sum + (n - |I|) * bid(n - ell) is not strictly
//                   below the adversary budget beta * R.
enum class FeasibilityFailure { None, SizeOverflow, MassShortfall, BudgetOverrun };

std::string to_string(FeasibilityFailure failure);

struct Feasibility {
    bool feasible = false;
    FeasibilityFailure failure = FeasibilityFailure::None;
};

Feasibility check_feasibility(const TargetSet& set, const BidProfile& profile,
                              const Rational& ratio, const Rational& beta);

// Quota predicate: index mass >= quota * ell(ell+1)/2 and bid cost at most
// quota * top_sum(cost_block).  cost_block defaults to set.ell; the shifted
// pair builder is certified against block ell + 1.
bool is_quota_set(const TargetSet& set, const BidProfile& profile, const Rational& quota,
                  long cost_block = -1);

// Per-block scratch data: bid accessors on the block scale and the four
// extremal selectors the builders pivot on.  All argmin/argmax ties resolve
// to the smallest index.
class BlockContext {
public:
    // Requires 1 <= ell <= profile.size().  Keeps a reference to `profile`;
    // the profile must outlive the context.
    BlockContext(const BidProfile& profile, long ell);

    const BidProfile& profile() const { return *profile_; }
    long n() const { return profile_->size(); }
    long ell() const { return ell_; }

    // t_ell: total of the top-ell block.
    const Rational& top_sum() const { return profile_->top_sum(ell_); }

    // x(i) = bid(n - ell + i), i in [0, ell].
    const Rational& x(long i) const;

    // y(i) = 2 i t_ell / (ell (ell + 1)), defined for any integer i;
    // y(i) is the block cost budget that buys index mass i.
    Rational y(long i) const;

    // argmax over i in [1, ell] of x(i) - y(i).  The maximizer satisfies
    // x(i) - x(best) <= y(i - best) for every i and x(best) >= y(best).
    long best_surplus() const { return best_surplus_; }

    // argmin / argmax over i in [1, ell] of x(i) + x(ell - i + 1).
    long min_pair() const { return min_pair_; }
    long max_pair() const { return max_pair_; }

    // argmax over i in [1, ell - 1] of x(i) + x(ell - i); needs ell >= 2.
    long max_adjacent_pair() const;

private:
    const BidProfile* profile_;
    long ell_;
    long best_surplus_ = 0;
    long min_pair_ = 0;
    long max_pair_ = 0;
    long adjacent_pair_ = 0;  // 0 when ell == 1
};

// --- builders ---------------------------------------------------------------
// Every builder validates its postcondition at runtime (quota, size bounds,
// and each intermediate membership) and throws InvariantError with a
// "builder/case" tag on violation.

// d copies of the cheapest complementary pair {i, ell - i + 1}.
// Quota (2d/ell); size exactly 2d; mass exactly d (ell + 1).
TargetSet pair_multiset(const BlockContext& ctx, long d);

// The full block {1..ell} trimmed by index mass h at a bid-cost credit of
// at least y(h).  Requires 0 <= 2h <= ell + 1.
// Quota (1 - 2h/(ell(ell+1))); size ell - 1 or ell.
TargetSet trimmed_block(const BlockContext& ctx, long h);

// k full blocks plus surplus index mass h.  Requires k >= 1, 0 <= h <= ell.
// Quota (k + 2h/(ell(ell+1)));
// size within [k ell + floor(2h/(ell+1)), k ell + ceil(2h/(ell+1))].
TargetSet stacked_block(const BlockContext& ctx, long k, long h);

// d cheapest pairs plus a two-element remainder of index mass h.
// Requires d >= 1, 0 <= h <= ell.  Quota (2d/ell + 2h/(ell(ell+1)));
// size at most 2d + 2.  When x(0) > 0 the search can legitimately exhaust;
// that raises InvariantError (tag "padded-pairs/exhausted").  With
// x(0) == 0 (always true for ell == n) success is guaranteed.
TargetSet padded_pairs(const BlockContext& ctx, long d, long h);

// d cheapest complementary pairs of the (ell+1)-block, shifted down one
// index.  Requires ell <= n - 1.  Size exactly 2d; mass >= d * ell; bid
// cost at most (2d/(ell+1)) * top_sum(ell + 1).
TargetSet shifted_pairs(const BlockContext& ctx, long d);

// The two candidate plans for the boundary case, built from the spectrum of
// the block (whole = k >= 1, pairs_up = d', rem_up = h'):
//   with_rem     = stacked_block(k, 0) ∪ shifted_pairs(d') ∪ {h'}
//   without_rem  = stacked_block(k, 0) ∪ shifted_pairs(d' + 1) minus one h'
// Requires ell <= n - 1 and 2 h' <= ell.  Mass(with_rem) equals the
// feasibility threshold exactly; mass(without_rem) exceeds it by ell - 2h'.
struct BoundaryPlans {
    TargetSet with_rem;
    TargetSet without_rem;
};

BoundaryPlans boundary_plans(const BlockContext& ctx, const Spectrum& spectrum);

// Converts a feasible target set into n concrete adversary bids:
// the targeted bids (plus copies of x(0) up to n bids), all raised by the
// smallest viable uniform increment delta = g/j, where
// g = (beta * R - base cost) / (n + 1) and j is the least positive integer
// making every raised bid avoid the defender's values.  Postconditions
// (InvariantError otherwise): n bids, total <= beta * R, no bid equals a
// defender bid.  The caller is responsible for feasibility
// (check_feasibility) -- BudgetOverrun would make delta nonpositive, which
// raises DomainError here.
std::vector<Rational> counter_bids(const TargetSet& set, const BidProfile& profile,
                                   const Rational& ratio, const Rational& beta);

}  // namespace posbid
