// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posbid/defense.hpp"
#include "posbid/equilibrium.hpp"
#include "posbid/errors.hpp"
#include "posbid/target_sets.hpp"
#include "support.hpp"

#include <vector>

using namespace posbid;
using posbid::testing::TestRng;

namespace {

BidProfile profile_of(std::vector<Rational> bids) { return BidProfile::from_bids(std::move(bids)); }

Rational q(long num, long den) { return make_rational(num, den); }

std::vector<long> idx(const TargetSet& set) { return set.indices; }

}  // namespace

TEST_CASE("target set construction validates and sorts") {
    const TargetSet set = TargetSet::of(3, {2, 0, 3, 2});
    CHECK(set.ell == 3);
    CHECK(idx(set) == std::vector<long>{0, 2, 2, 3});
    CHECK(set.size() == 4);
    CHECK(index_sum(set) == 7);

    CHECK_THROWS_AS(TargetSet::of(0, {}), DomainError);
    CHECK_THROWS_AS(TargetSet::of(3, {4}), DomainError);
    CHECK_THROWS_AS(TargetSet::of(3, {-1}), DomainError);
}

TEST_CASE("target set union and single removal") {
    TargetSet a = TargetSet::of(4, {1, 4});
    const TargetSet b = TargetSet::of(4, {2, 4});
    TargetSet u = a.united(b);
    CHECK(idx(u) == std::vector<long>{1, 2, 4, 4});

    CHECK(u.remove_one(4));
    CHECK(idx(u) == std::vector<long>{1, 2, 4});
    CHECK_FALSE(u.remove_one(3));
    CHECK(idx(u) == std::vector<long>{1, 2, 4});

    const TargetSet other_block = TargetSet::of(3, {1});
    CHECK_THROWS_AS(a.united(other_block), DomainError);
}

TEST_CASE("bid_sum indexes into the top block") {
    const BidProfile d = profile_of({q(1, 10), q(2, 10), q(3, 10), q(4, 10)});
    CHECK(bid_sum(d, TargetSet::of(4, {1, 4})) == q(5, 10));
    CHECK(bid_sum(d, TargetSet::of(2, {0, 1, 2})) == q(2, 10) + q(3, 10) + q(4, 10));
    CHECK(bid_sum(d, TargetSet::of(4, {0})) == 0);  // zero sentinel below the full block
}

TEST_CASE("feasibility: empty set on the uniform-quarters profile fails on budget") {
    const BidProfile d = profile_of({q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    const Feasibility f = check_feasibility(TargetSet::of(1, {}), d, 1, 1);
    CHECK_FALSE(f.feasible);
    // Slack bid cost: four copies of bid(3) = 1/4 total exactly the budget 1,
    // which misses the strict requirement.
    CHECK(f.failure == FeasibilityFailure::BudgetOverrun);
    CHECK(to_string(f.failure) == "budgetOverrun");
}

TEST_CASE("feasibility: mass threshold uses the rounded ratio") {
    const BidProfile d = profile_of({q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    // R = 3/2, ell = 1: rounded ratio 1, so the empty set is short on mass.
    Feasibility f = check_feasibility(TargetSet::of(1, {}), d, q(3, 2), 1);
    CHECK_FALSE(f.feasible);
    CHECK(f.failure == FeasibilityFailure::MassShortfall);

    // {1} has mass 1 and slack cost 1/4 + 3/4 = 1 < 3/2.
    f = check_feasibility(TargetSet::of(1, {1}), d, q(3, 2), 1);
    CHECK(f.feasible);
    CHECK(f.failure == FeasibilityFailure::None);
}

TEST_CASE("feasibility: size overflow precedes the other checks") {
    const BidProfile d = profile_of({q(1, 2), q(1, 2)});
    const Feasibility f =
        check_feasibility(TargetSet::of(1, {1, 1, 1}), d, 1, 1);
    CHECK_FALSE(f.feasible);
    CHECK(f.failure == FeasibilityFailure::SizeOverflow);
}

TEST_CASE("quota predicate and union additivity") {
    const BidProfile d = profile_of({q(1, 10), q(2, 10), q(3, 10), q(4, 10)});
    const TargetSet pair = TargetSet::of(4, {1, 4});
    CHECK(is_quota_set(pair, d, q(1, 2)));        // mass 5 = 5, cost 1/2 = 1/2
    CHECK_FALSE(is_quota_set(pair, d, q(2, 5)));  // cheaper quota fails on cost

    TestRng rng(20260815);
    for (int trial = 0; trial < 40; ++trial) {
        const long n = rng.range(2, 5);
        const BidProfile prof = profile_of(rng.bids(n, 6, 1));
        const long ell = rng.range(1, n);
        const BlockContext ctx(prof, ell);
        const long d1 = rng.range(0, 2);
        const long d2 = rng.range(0, 2);
        const TargetSet a = pair_multiset(ctx, d1);
        const TargetSet b = pair_multiset(ctx, d2);
        const Rational qa = q(2 * d1, ell);
        const Rational qb = q(2 * d2, ell);
        CHECK(is_quota_set(a.united(b), prof, Rational(qa + qb)));
    }
}

TEST_CASE("block context selectors resolve ties to the smallest index") {
    // Proportional profile: x(i) - y(i) == 0 and all pair costs equal.
    const BidProfile d = optimal_bid_set(4, 1).to_profile();
    const BlockContext ctx(d, 4);
    CHECK(ctx.best_surplus() == 1);
    CHECK(ctx.min_pair() == 1);
    CHECK(ctx.max_pair() == 1);
    CHECK(ctx.max_adjacent_pair() == 1);
    CHECK(ctx.top_sum() == 1);
    CHECK(ctx.x(0) == 0);
    CHECK(ctx.y(2) == q(1, 5));

    CHECK_THROWS_AS(BlockContext(d, 0), DomainError);
    CHECK_THROWS_AS(BlockContext(d, 5), DomainError);
    CHECK_THROWS_AS(BlockContext(d, 1).max_adjacent_pair(), DomainError);
}

TEST_CASE("block context selector facts hold on random profiles") {
    TestRng rng(7041);
    for (int trial = 0; trial < 60; ++trial) {
        const long n = rng.range(1, 6);
        const BidProfile prof = profile_of(rng.bids(n, 8, 1));
        const long ell = rng.range(1, n);
        const BlockContext ctx(prof, ell);
        const long i0 = ctx.best_surplus();
        REQUIRE(i0 >= 1);
        REQUIRE(i0 <= ell);
        CHECK(ctx.x(i0) >= ctx.y(i0));  // block average argument
        for (long i = 1; i <= ell; ++i) {
            CHECK(ctx.x(i) - ctx.x(i0) <= ctx.y(i - i0));
            CHECK(ctx.x(ctx.min_pair()) + ctx.x(ell - ctx.min_pair() + 1) <=
                  ctx.x(i) + ctx.x(ell - i + 1));
            CHECK(ctx.x(ctx.max_pair()) + ctx.x(ell - ctx.max_pair() + 1) >=
                  ctx.x(i) + ctx.x(ell - i + 1));
        }
        // Cheapest complementary pair is at most twice the block average.
        CHECK(ctx.x(ctx.min_pair()) + ctx.x(ell - ctx.min_pair() + 1) <=
              2 * ctx.top_sum() / ell);
    }
}

TEST_CASE("pair multiset pins") {
    const BidProfile d = optimal_bid_set(4, 1).to_profile();  // {1/10,...,4/10}
    CHECK(idx(pair_multiset(BlockContext(d, 4), 1)) == std::vector<long>{1, 4});
    CHECK(idx(pair_multiset(BlockContext(d, 4), 0)).empty());

    const BidProfile e = profile_of({0, q(1, 10), q(2, 10), q(7, 10)});
    CHECK(idx(pair_multiset(BlockContext(e, 3), 2)) == std::vector<long>{2, 2, 2, 2});

    CHECK_THROWS_AS(pair_multiset(BlockContext(d, 4), -1), DomainError);
}

TEST_CASE("trimmed block pins: drop and degenerate cases") {
    const BidProfile d = optimal_bid_set(4, 1).to_profile();
    CHECK(idx(trimmed_block(BlockContext(d, 4), 0)) == std::vector<long>{1, 2, 3, 4});
    // i0 == h == 1 on the proportional profile: drop the surplus index.
    CHECK(idx(trimmed_block(BlockContext(d, 4), 1)) == std::vector<long>{2, 3, 4});

    // 2h == ell + 1 collapses to (ell-1)/2 cheapest pairs.
    const BidProfile e = optimal_bid_set(3, 1).to_profile();  // {1/6, 2/6, 3/6}
    CHECK(idx(trimmed_block(BlockContext(e, 3), 2)) == std::vector<long>{1, 3});

    CHECK_THROWS_AS(trimmed_block(BlockContext(d, 4), -1), DomainError);
    CHECK_THROWS_AS(trimmed_block(BlockContext(d, 4), 3), DomainError);
}

TEST_CASE("trimmed block pins: shift-surplus branch") {
    // x = (1/10, 1/10, 7/10): the surplus maximizer is the top index 3.
    const BidProfile d = profile_of({q(1, 10), q(1, 10), q(7, 10)});
    const BlockContext ctx(d, 3);
    REQUIRE(ctx.best_surplus() == 3);
    CHECK(idx(trimmed_block(ctx, 1)) == std::vector<long>{1, 2, 2});
}

TEST_CASE("trimmed block pins: double-drop branches") {
    // x = (2/10, 2/10, 2/10, 4/10): i0 = 1, and x(2) >= y(2) holds.
    const BidProfile low = profile_of({q(2, 10), q(2, 10), q(2, 10), q(4, 10)});
    REQUIRE(BlockContext(low, 4).best_surplus() == 1);
    CHECK(idx(trimmed_block(BlockContext(low, 4), 2)) == std::vector<long>{1, 3, 4});

    // x = (3/20, 3/20, 6/20, 8/20): x(2) < y(2) but x(3) >= y(3).
    const BidProfile high = profile_of({q(3, 20), q(3, 20), q(6, 20), q(8, 20)});
    REQUIRE(BlockContext(high, 4).best_surplus() == 1);
    CHECK(idx(trimmed_block(BlockContext(high, 4), 2)) == std::vector<long>{2, 2, 4});
}

TEST_CASE("trimmed block pins: pair-swap branches") {
    // Even block: both double-drop tests fail, swap out the priciest pair.
    const BidProfile even = profile_of({q(3, 20), q(3, 20), q(5, 20), q(9, 20)});
    REQUIRE(BlockContext(even, 4).best_surplus() == 1);
    CHECK(idx(trimmed_block(BlockContext(even, 4), 2)) == std::vector<long>{2, 3, 3});

    // Odd block, adjacent pair at least the top bid: remove the pair.
    const BidProfile odd_pair = profile_of({3, 3, 3, 3, 4});
    REQUIRE(BlockContext(odd_pair, 5).best_surplus() == 1);
    CHECK(idx(trimmed_block(BlockContext(odd_pair, 5), 2)) == std::vector<long>{2, 3, 3, 5});

    // Odd block, top bid beats every adjacent pair: remove the top index.
    const BidProfile odd_top = profile_of({1, 1, 1, 1, q(5, 2)});
    REQUIRE(BlockContext(odd_top, 5).best_surplus() == 1);
    CHECK(idx(trimmed_block(BlockContext(odd_top, 5), 2)) == std::vector<long>{1, 2, 3, 3, 4});
}

TEST_CASE("stacked block pins") {
    const BidProfile d = optimal_bid_set(4, 1).to_profile();
    CHECK(idx(stacked_block(BlockContext(d, 4), 1, 0)) == std::vector<long>{1, 2, 3, 4});
    CHECK(idx(stacked_block(BlockContext(d, 4), 2, 0)) ==
          std::vector<long>{1, 1, 2, 2, 3, 3, 4, 4});

    // Blocks-minus-trim: ell = 2, k = 1, h = 2 on the proportional profile.
    CHECK(idx(stacked_block(BlockContext(d, 2), 1, 2)) == std::vector<long>{1, 2, 2});

    // Cheap single: x(1) <= y(1).
    const BidProfile cheap = profile_of({q(1, 20), q(5, 20), q(5, 20), q(5, 20)});
    CHECK(idx(stacked_block(BlockContext(cheap, 4), 1, 1)) == std::vector<long>{1, 1, 2, 3, 4});

    // Pair-reroute: i0 = ell, reroute lands on index 1.
    const BidProfile reroute = profile_of({q(1, 10), q(1, 10), q(1, 10), q(6, 10)});
    REQUIRE(BlockContext(reroute, 4).best_surplus() == 4);
    CHECK(idx(stacked_block(BlockContext(reroute, 4), 1, 1)) ==
          std::vector<long>{1, 2, 2, 3, 3});

    // Surplus-shift: i0 == h, shift it up by h.
    const BidProfile shift = profile_of({q(2, 10), q(2, 10), q(2, 10), q(3, 10)});
    REQUIRE(BlockContext(shift, 4).best_surplus() == 1);
    CHECK(idx(stacked_block(BlockContext(shift, 4), 1, 1)) == std::vector<long>{2, 2, 3, 4});

    CHECK_THROWS_AS(stacked_block(BlockContext(d, 4), 0, 0), DomainError);
    CHECK_THROWS_AS(stacked_block(BlockContext(d, 4), 1, 5), DomainError);
}

TEST_CASE("padded pairs pins") {
    const BidProfile d = optimal_bid_set(4, 1).to_profile();
    // h = 0 splits into the free pair {0, 0}.
    CHECK(idx(padded_pairs(BlockContext(d, 4), 1, 0)) == std::vector<long>{0, 0, 1, 4});

    // Remainder split fails, lifted pair succeeds: {2, 2} at ell = 2.
    const BidProfile lift = profile_of({q(1, 10), q(2, 10), q(3, 10)});
    CHECK(idx(padded_pairs(BlockContext(lift, 2), 1, 1)) == std::vector<long>{2, 2});

    // Legitimate exhaustion requires a positive bid below the block.
    const BidProfile stuck = profile_of({q(1, 2), q(1, 2)});
    CHECK_THROWS_WITH_AS(padded_pairs(BlockContext(stuck, 1), 1, 1),
                         doctest::Contains("padded-pairs/exhausted"), InvariantError);

    CHECK_THROWS_AS(padded_pairs(BlockContext(d, 4), 0, 0), DomainError);
    CHECK_THROWS_AS(padded_pairs(BlockContext(d, 4), 1, 5), DomainError);
}

TEST_CASE("shifted pairs pins") {
    const BidProfile d = optimal_bid_set(4, 1).to_profile();
    const BlockContext ctx(d, 3);
    const TargetSet set = shifted_pairs(ctx, 1);
    CHECK(idx(set) == std::vector<long>{0, 3});
    CHECK(index_sum(set) == 3);  // d * ell exactly
    CHECK(idx(shifted_pairs(ctx, 0)).empty());

    CHECK_THROWS_AS(shifted_pairs(BlockContext(d, 4), 1), DomainError);  // needs ell <= n-1
}

TEST_CASE("boundary plans: masses, sizes, and removability") {
    // Profile {1/6, 1/3, 1/2}, ell = 2, R = 2: spectrum has k = 1, d' = 1, h' = 0.
    const BidProfile d = optimal_bid_set(3, 1).to_profile();
    const Rational ratio = 2;
    const Spectrum s = spectrum(ratio, 2);
    REQUIRE(s.whole == 1);
    REQUIRE(s.pairs_up == 1);
    REQUIRE(s.rem_up == 0);

    const BoundaryPlans plans = boundary_plans(BlockContext(d, 2), s);
    CHECK(idx(plans.with_rem) == std::vector<long>{0, 0, 1, 2, 2});
    CHECK(idx(plans.without_rem) == std::vector<long>{0, 1, 2, 2, 2});
    CHECK(plans.with_rem.size() == plans.without_rem.size());
    // with_rem hits the mass threshold k ell(ell+1)/2 + d' ell + h' exactly;
    // without_rem exceeds it by ell - 2h'.
    CHECK(index_sum(plans.with_rem) == 5);
    CHECK(index_sum(plans.without_rem) == 7);
}

TEST_CASE("boundary plans validate the spectrum preconditions") {
    const BidProfile d = optimal_bid_set(3, 1).to_profile();
    Spectrum s = spectrum(2, 2);
    s.whole = 0;
    CHECK_THROWS_AS(boundary_plans(BlockContext(d, 2), s), DomainError);
    s = spectrum(2, 2);
    s.rem_up = 2;  // violates 2h' <= ell
    CHECK_THROWS_AS(boundary_plans(BlockContext(d, 2), s), DomainError);
}

TEST_CASE("counter bids pin: uniform quarters") {
    const BidProfile d = profile_of({q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    const TargetSet set = TargetSet::of(4, {1, 4, 4});
    REQUIRE(check_feasibility(set, d, 1, 1).feasible);

    const std::vector<Rational> bids = counter_bids(set, d, 1, 1);
    const std::vector<Rational> expected = {q(1, 20), q(3, 10), q(3, 10), q(3, 10)};
    CHECK(bids == expected);

    const Rational win = expected_win_exact(BidProfile::from_bids(bids), d);
    CHECK(win == 3);
    CHECK(win >= Rational(4 - 4) + Rational(index_sum(set)) / 4);
}

TEST_CASE("counter bids raise the increment past defender collisions") {
    // Base bids {1/4, 3/8}, budget 1: g = (1 - 5/8) / 3 = 1/8, and
    // 1/4 + 1/8 = 3/8 collides with a defender bid, so j = 1 is bad;
    // j = 2 gives delta = 1/16.
    const BidProfile d = profile_of({q(1, 4), q(3, 8)});
    const TargetSet set = TargetSet::of(1, {1});
    const std::vector<Rational> bids = counter_bids(set, d, q(8, 5), q(5, 8));
    const std::vector<Rational> expected = {q(5, 16), q(7, 16)};
    CHECK(bids == expected);
    for (const auto& b : bids) CHECK_FALSE(d.contains(b));
}

TEST_CASE("counter bids reject sets with no budget headroom") {
    const BidProfile d = profile_of({q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    CHECK_THROWS_AS(counter_bids(TargetSet::of(1, {}), d, 1, 1), DomainError);
}

TEST_CASE("builders satisfy quotas and conversions win the promised mass") {
    TestRng rng(911);
    for (int trial = 0; trial < 80; ++trial) {
        const long n = rng.range(1, 5);
        std::vector<Rational> raw = rng.bids(n, 6, 1);
        // Half the trials defend with a zero bottom bid so every block has
        // x(0) == 0 available.
        if (rng.coin()) raw.front() = 0;
        const BidProfile prof = profile_of(std::move(raw));
        const long ell = rng.range(1, n);
        const BlockContext ctx(prof, ell);

        for (long h = 0; 2 * h <= ell + 1; ++h) (void)trimmed_block(ctx, h);
        for (long k = 1; k <= 2; ++k)
            for (long h = 0; h <= ell; ++h) (void)stacked_block(ctx, k, h);
        if (ell < n)
            for (long d = 0; d <= 2; ++d) (void)shifted_pairs(ctx, d);
        for (long d = 1; d <= 2; ++d) {
            for (long h = 0; h <= ell; ++h) {
                if (ctx.x(0) == 0) {
                    (void)padded_pairs(ctx, d, h);  // success guaranteed
                } else {
                    try {
                        (void)padded_pairs(ctx, d, h);
                    } catch (const InvariantError& e) {
                        CHECK(std::string(e.tag()) == "padded-pairs/exhausted");
                    }
                }
            }
        }

        // Convert a feasible stacked block and check the win lower bound.
        const TargetSet set = stacked_block(ctx, 1, rng.range(0, ell));
        const Rational ratio = Rational(index_sum(set)) * 2 / (BigInt(ell) * (ell + 1)) +
                               q(1, rng.range(2, 9));
        if (set.size() <= n && check_feasibility(set, prof, ratio, 1).feasible) {
            const std::vector<Rational> bids = counter_bids(set, prof, ratio, 1);
            REQUIRE(static_cast<long>(bids.size()) == n);
            Rational total = 0;
            for (const auto& b : bids) {
                total += b;
                CHECK_FALSE(prof.contains(b));
            }
            CHECK(total <= ratio);
            const Rational win = expected_win_exact(BidProfile::from_bids(bids), prof);
            CHECK(win >= Rational(n - ell) + Rational(index_sum(set)) / n);
        }
    }
}
