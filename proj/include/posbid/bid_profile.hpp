// SPDX-License-Identifier: MIT
//
// Bid multisets and exact expected-win evaluation.
//
// Model: two players each submit n nonnegative bids, one per object.  The
// adversary's bids meet the defender's in a uniformly random one-to-one
// matching (equivalently, the defender's list is randomly permuted against
// the adversary's fixed list).  Each object goes to the strictly higher bid;
// an exact tie is split half-half in expectation.
#pragma once

#include "posbid/rational.hpp"

#include <iosfwd>
#include <vector>

namespace posbid {

// Immutable sorted bid multiset with precomputed top-block sums.
// Indexing follows the ascending convention: bid(1) <= ... <= bid(n), with
// bid(0) == 0 as a sentinel so "the bid below a block" is always defined.
class BidProfile {
public:
    // Sorts (skipped when already ascending) and validates: at least one
    // bid, all bids >= 0.  Throws DomainError on violation.
    static BidProfile from_bids(std::vector<Rational> bids);

    long size() const { return static_cast<long>(bids_.size()) - 1; }

    // i in [0, n]; bid(0) is the zero sentinel.
    const Rational& bid(long i) const;

    // Sum of the `ell` largest bids, ell in [0, n]; top_sum(0) == 0.
    const Rational& top_sum(long ell) const;

    const Rational& total() const { return top_sums_.back(); }

    // Ascending bids without the sentinel.
    std::vector<Rational> ascending() const;

    // Number of bids strictly below / weakly below the given value.
    long count_below(const Rational& value) const;
    long count_at_most(const Rational& value) const;
    bool contains(const Rational& value) const;

private:
    BidProfile() = default;
    std::vector<Rational> bids_;      // [0] = 0 sentinel, then ascending
    std::vector<Rational> top_sums_;  // [ell] = sum of ell largest bids
};

// Expected number of objects the adversary wins against the randomly
// permuted defender:  (1/n) * sum over adversary bids a of
// (#{defender bids < a} + (1/2) #{defender bids == a}).
// Requires equal sizes (DomainError otherwise).
Rational expected_win_exact(const BidProfile& adversary, const BidProfile& defender);

struct WinSplit {
    Rational adversary;
    Rational defender;
};

// Computes both sides' expected wins independently and verifies they sum to
// n exactly (InvariantError otherwise — the game is constant-sum).
WinSplit zero_sum_check(const BidProfile& adversary, const BidProfile& defender);

// Reads one rational or exact decimal per line; '#' starts a comment, blank
// lines are skipped.  Errors carry the 1-based line number.  Returns values
// in file order.
std::vector<Rational> parse_bid_lines(std::istream& in);

// Writes one canonical rational per line.
void write_bid_lines(std::ostream& out, const std::vector<Rational>& bids);

}  // namespace posbid
