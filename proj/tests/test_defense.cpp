// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "posbid/defense.hpp"
#include "posbid/errors.hpp"

#include "support.hpp"

using namespace posbid;

namespace {
std::vector<Rational> R(std::initializer_list<Rational> xs) { return {xs}; }
}  // namespace

TEST_CASE("proportional regime: tier of arithmetic bids after zeros") {
    auto c = optimal_bid_set(4, Rational(1));
    CHECK(c.branch == Branch::Proportional);
    CHECK(c.bids == R({Rational(1, 10), Rational(1, 5), Rational(3, 10), Rational(2, 5)}));
    CHECK(c.zero_count == 0);
    CHECK(c.proportional_count == 4);
    CHECK(c.unbeatable_count == 0);

    c = optimal_bid_set(5, Rational(2));
    CHECK(c.bids == R({Rational(0), Rational(0), Rational(0), Rational(1, 3), Rational(2, 3)}));
    CHECK(c.zero_count == 3);
    CHECK(c.proportional_count == 2);

    c = optimal_bid_set(5, Rational(2), Rational(3));
    CHECK(c.bids == R({Rational(0), Rational(0), Rational(0), Rational(1), Rational(2)}));
}

TEST_CASE("low-ratio regime: zeros plus strictly unbeatable equal bids") {
    const auto c = optimal_bid_set(10, Rational(3, 20));
    CHECK(c.branch == Branch::ZerosPlusUnbeatable);
    CHECK(c.zero_count == 7);
    CHECK(c.unbeatable_count == 3);
    for (long i = 0; i < 7; ++i) CHECK(c.bids[static_cast<std::size_t>(i)] == 0);
    for (long i = 7; i < 10; ++i) CHECK(c.bids[static_cast<std::size_t>(i)] == Rational(1, 3));
    CHECK(Rational(1, 3) > c.beta * c.ratio);
}

TEST_CASE("tiny-ratio regime: equal shares the adversary cannot reach") {
    const auto c = optimal_bid_set(3, Rational(1, 4));
    CHECK(c.branch == Branch::BelowRange);
    CHECK(c.bids == R({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    CHECK(c.unbeatable_count == 3);
}

TEST_CASE("boundary ratio 1/n: one zero, equal bids strictly above beta/n") {
    const auto c = optimal_bid_set(4, Rational(1, 4));
    CHECK(c.branch == Branch::AtLowerBoundary);
    CHECK(c.bids == R({Rational(0), Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    CHECK(c.zero_count == 1);
    CHECK(c.unbeatable_count == 3);

    const auto single = optimal_bid_set(1, Rational(1));
    CHECK(single.branch == Branch::AtLowerBoundary);
    CHECK(single.bids == R({Rational(1)}));
    CHECK(single.proportional_count == 1);
}

TEST_CASE("huge-ratio regime: concede all but one full-budget bid") {
    const auto c = optimal_bid_set(3, Rational(4));
    CHECK(c.branch == Branch::AboveRange);
    CHECK(c.bids == R({Rational(0), Rational(0), Rational(1)}));
    CHECK(c.zero_count == 2);
    CHECK(c.proportional_count == 1);
}

TEST_CASE("construction invariants on random instances") {
    testing::TestRng rng(987);
    for (int trial = 0; trial < 400; ++trial) {
        const long n = rng.range(1, 40);
        const Rational ratio(rng.range(1, 40 * 40), rng.range(1, 40));
        const Rational beta(rng.range(1, 9), rng.range(1, 3));
        const auto c = optimal_bid_set(n, ratio, beta);

        CHECK(static_cast<long>(c.bids.size()) == n);
        CHECK(c.zero_count + c.proportional_count + c.unbeatable_count == n);
        CHECK(std::is_sorted(c.bids.begin(), c.bids.end()));

        Rational total = 0;
        for (const auto& b : c.bids) total += b;
        CHECK(total == beta);  // every regime spends the whole budget

        for (long i = 0; i < c.zero_count; ++i) CHECK(c.bids[static_cast<std::size_t>(i)] == 0);
        for (long i = n - c.unbeatable_count; i < n; ++i)
            CHECK(c.bids[static_cast<std::size_t>(i)] > beta * ratio);
        if (c.branch == Branch::Proportional) {
            const long m = c.proportional_count;
            for (long i = 1; i <= m; ++i)
                CHECK(c.bids[static_cast<std::size_t>(n - m + i - 1)] ==
                      beta * Rational(2 * i, BigInt(m) * (m + 1)));
        }
        CHECK(c.branch == equilibrium(n, ratio).branch);
        CHECK(c.fidelity == equilibrium(n, ratio).fidelity);
    }
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(optimal_bid_set(0, Rational(1)), DomainError);
    CHECK_THROWS_AS(optimal_bid_set(3, Rational(0)), DomainError);
    CHECK_THROWS_AS(optimal_bid_set(3, Rational(1), Rational(0)), DomainError);
    CHECK_THROWS_AS(optimal_bid_set(3, Rational(1), Rational(-1)), DomainError);
}
