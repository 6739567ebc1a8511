// SPDX-License-Identifier: MIT
#include "posbid/defense.hpp"

#include "posbid/errors.hpp"

namespace posbid {

BidConstruction optimal_bid_set(long n, const Rational& ratio, const Rational& beta) {
    if (n < 1) throw DomainError("object count must be >= 1");
    if (ratio <= 0) throw DomainError("budget ratio must be positive");
    if (beta <= 0) throw DomainError("defender budget must be positive");

    const EquilibriumResult eq = equilibrium(n, ratio);
    BidConstruction out;
    out.n = n;
    out.beta = beta;
    out.ratio = ratio;
    out.branch = eq.branch;
    out.fidelity = eq.fidelity;
    out.bids.reserve(static_cast<std::size_t>(n));

    switch (eq.branch) {
        case Branch::BelowRange: {
            // Every equal share beats the adversary's whole budget.
            const Rational share = beta / n;
            out.bids.assign(static_cast<std::size_t>(n), share);
            out.unbeatable_count = n;
            break;
        }
        case Branch::AtLowerBoundary: {
            if (n == 1) {
                out.bids.push_back(beta);
                out.proportional_count = 1;
            } else {
                out.bids.emplace_back(0);
                const Rational share = beta / (n - 1);  // > beta/n == beta*R
                out.bids.insert(out.bids.end(), static_cast<std::size_t>(n - 1), share);
                out.zero_count = 1;
                out.unbeatable_count = n - 1;
            }
            break;
        }
        case Branch::ZerosPlusUnbeatable: {
            const long zeros = zero_bid_count(n, ratio);
            const Rational share = beta / (n - zeros);
            if (share <= beta * ratio)
                throw InvariantError("defense/unbeatable",
                                     "equal share does not exceed the adversary budget");
            out.bids.assign(static_cast<std::size_t>(zeros), Rational(0));
            out.bids.insert(out.bids.end(), static_cast<std::size_t>(n - zeros), share);
            out.zero_count = zeros;
            out.unbeatable_count = n - zeros;
            break;
        }
        case Branch::Proportional: {
            const long tier = proportional_count(n, ratio);
            out.bids.assign(static_cast<std::size_t>(n - tier), Rational(0));
            const BigInt denom = BigInt(tier) * (tier + 1);
            const bool unit_budget = beta == 1;  // skip the no-op scaling in the hot path
            for (long i = 1; i <= tier; ++i) {
                Rational bid = make_rational(BigInt(2 * i), denom);
                if (!unit_budget) bid *= beta;
                out.bids.push_back(std::move(bid));
            }
            out.zero_count = n - tier;
            out.proportional_count = tier;
            break;
        }
        case Branch::AboveRange: {
            out.bids.assign(static_cast<std::size_t>(n - 1), Rational(0));
            out.bids.push_back(beta);
            out.zero_count = n - 1;
            out.proportional_count = 1;
            break;
        }
    }

    if (static_cast<long>(out.bids.size()) != n ||
        out.zero_count + out.proportional_count + out.unbeatable_count != n)
        throw InvariantError("defense/counts", "role counts do not partition the bids");
    Rational total = 0;
    for (const auto& b : out.bids) total += b;
    if (total > beta) throw InvariantError("defense/budget", "bids exceed the budget");
    return out;
}

}  // namespace posbid
