// SPDX-License-Identifier: MIT
#include "posbid/equilibrium.hpp"

#include "posbid/errors.hpp"

#include <algorithm>

namespace posbid {
namespace {

void require_positive_ratio(const Rational& ratio) {
    if (ratio <= 0) throw DomainError("budget ratio must be positive");
}

Rational pair_unit(long ell) {
    // 2 / (ell (ell + 1)): index mass of one complementary pair, as a
    // fraction of the full block mass ell (ell + 1) / 2.
    return make_rational(2, BigInt(ell) * (ell + 1));
}

}  // namespace

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::BelowRange: return "belowRange";
        case Branch::AtLowerBoundary: return "atLowerBoundary";
        case Branch::ZerosPlusUnbeatable: return "zerosPlusUnbeatable";
        case Branch::Proportional: return "proportional";
        case Branch::AboveRange: return "aboveRange";
    }
    throw DomainError("unknown branch");
}

std::string to_string(Fidelity fidelity) {
    switch (fidelity) {
        case Fidelity::Proved: return "proved";
        case Fidelity::Claimed: return "claimed";
    }
    throw DomainError("unknown fidelity");
}

Rational rounded_ratio(const Rational& ratio, long ell) {
    if (ell < 1) throw DomainError("block size must be >= 1");
    return strict_floor_multiple(ratio, pair_unit(ell));
}

Rational tier_value(long n, const Rational& ratio, long ell) {
    if (n < 1) throw DomainError("object count must be >= 1");
    if (ell < 1 || ell > n) throw DomainError("tier size must be in [1, n]");
    const Rational rounded = rounded_ratio(ratio, ell);
    return Rational(n - ell + rounded * ell * (ell + 1) / (2 * Rational(n)));
}

long zero_bid_count(long n, const Rational& ratio) {
    if (n < 2) throw DomainError("zero_bid_count needs n >= 2");
    if (ratio * n <= 1 || ratio * (n + 1) > 2)
        throw DomainError("zero_bid_count needs 1/n < ratio <= 2/(n+1)");
    const Rational cut = Rational(2 * n + 1) - Rational(2) / ratio;
    const long count = to_long_checked(strict_floor(cut));
    // 1/n < R <= 2/(n+1) pins the count into [1, n-1].
    if (count < 1 || count > n - 1)
        throw InvariantError("zero-bid-count", "count escaped [1, n-1]");
    return count;
}

long proportional_count(long n, const Rational& ratio) {
    if (n < 1) throw DomainError("object count must be >= 1");
    if (ratio * (n + 1) <= 2 || ratio > n)
        throw DomainError("proportional_count needs 2/(n+1) < ratio <= n");
    const BigInt tier = floor_int(Rational(n) / ratio);
    return std::min<long>(n, to_long_checked(tier));
}

Spectrum spectrum(const Rational& ratio, long ell) {
    require_positive_ratio(ratio);
    if (ell < 1) throw DomainError("block size must be >= 1");

    Spectrum s;
    s.rounded = rounded_ratio(ratio, ell);
    if (s.rounded < 0) throw DomainError("ratio too small: rounded ratio is negative");
    const BigInt half_block = BigInt(ell) * (ell + 1) / 2;
    s.gap = Rational((ratio - s.rounded) * half_block);
    // mass = rounded * ell (ell+1) / 2 is integral by construction.
    const Rational mass_q = Rational(s.rounded * half_block);
    if (boost::multiprecision::denominator(mass_q) != 1)
        throw InvariantError("spectrum", "rounded ratio not on the block grid");
    const BigInt mass = boost::multiprecision::numerator(mass_q);

    s.whole = to_long_checked(floor_int(s.rounded));
    const Rational frac = s.rounded - s.whole;
    s.pairs = to_long_checked(floor_int(Rational(frac * ell / 2)));
    s.pairs_up = to_long_checked(floor_int(Rational(frac * (ell + 1) / 2)));
    const BigInt base = BigInt(s.whole) * half_block;
    s.rem = to_long_checked(mass - base - BigInt(s.pairs) * (ell + 1));
    s.rem_up = to_long_checked(mass - base - BigInt(s.pairs_up) * ell);

    if (s.gap <= 0 || s.gap > 1)
        throw InvariantError("spectrum", "gap escaped (0, 1]");
    if (s.rem < 0 || s.rem > ell || s.rem_up < 0 || s.rem_up > ell - 1)
        throw InvariantError("spectrum", "remainder bounds violated");
    if (s.pairs_up != s.pairs && s.pairs_up != s.pairs + 1)
        throw InvariantError("spectrum", "pair counts out of step");
    return s;
}

EquilibriumResult equilibrium(long n, const Rational& ratio) {
    if (n < 1) throw DomainError("object count must be >= 1");
    require_positive_ratio(ratio);

    if (ratio * n < 1) return {Rational(0), Branch::BelowRange, Fidelity::Proved};
    if (ratio * n == 1)
        return {std::min(Rational(1, 2), Rational(1, BigInt(n))), Branch::AtLowerBoundary,
                Fidelity::Claimed};
    if (ratio * (n + 1) <= 2) {
        const long zeros = zero_bid_count(n, ratio);
        return {Rational(BigInt(zeros), BigInt(n)), Branch::ZerosPlusUnbeatable,
                Fidelity::Claimed};
    }
    if (ratio <= n) {
        const long tier = proportional_count(n, ratio);
        return {tier_value(n, ratio, tier), Branch::Proportional, Fidelity::Proved};
    }
    return {Rational(BigInt(n)), Branch::AboveRange, Fidelity::Proved};
}

EffectiveRatios effective_ratios(long n, const Rational& ratio) {
    const Rational value = equilibrium(n, ratio).value;
    const Rational r1 = ratio + 1;
    return {Rational(value * r1 / (ratio * n)), Rational((n - value) * r1 / n)};
}

EffectiveRatios limit_ratios(const Rational& ratio) {
    require_positive_ratio(ratio);
    const Rational r1 = ratio + 1;
    if (ratio >= 1)
        return {Rational((2 * ratio - 1) * r1 / (2 * ratio * ratio)), Rational(r1 / (2 * ratio))};
    return {Rational(r1 / 2), Rational((2 - ratio) * r1 / 2)};
}

}  // namespace posbid
