// SPDX-License-Identifier: MIT
//
// Shared helpers for the unit and acceptance tests: a deterministic random
// source (the mt19937_64 sequence is pinned by the standard, and we avoid
// std distributions so draws are identical on every platform), random
// rational/bid-profile generators, and a brute-force expected-win oracle
// that enumerates all assignment permutations (usable for small n only).
#pragma once

#include "posbid/bid_profile.hpp"
#include "posbid/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace posbid::testing {

class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw from {0, ..., bound - 1} by rejection (no std distribution).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return draw % bound;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (engine_() & 1u) != 0; }

    // Random rational in [0, max_value] with denominator <= max_den.
    Rational rational(long max_den, long max_value = 1) {
        const long den = range(1, max_den);
        const long num = range(0, max_value * den);
        return Rational(BigInt(num), BigInt(den));
    }

    // Random nonneg bid profile of size n with total <= beta: draws n cut
    // points on a denominator grid and takes gaps of a random subset scale.
    std::vector<Rational> bids(long n, long max_den, const Rational& beta) {
        std::vector<Rational> out;
        out.reserve(static_cast<std::size_t>(n));
        Rational left = beta;
        for (long i = 0; i < n; ++i) {
            const long den = range(1, max_den);
            const long num = range(0, den);
            Rational share = Rational(BigInt(num), BigInt(den * 2));  // <= 1/2
            out.push_back(Rational(left * share));
            left -= out.back();
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Expected number of objects won by `adversary` when the defender's bids are
// assigned to positions by a uniformly random permutation, computed by full
// enumeration of all n! permutations.  Positions are matched index-by-index;
// the winner of a position is the strictly higher bid, ties split 1/2-1/2.
// Exactness reference for expected_win_exact; factorial cost, keep n small.
inline Rational permutation_win_oracle(const std::vector<Rational>& adversary,
                                       const std::vector<Rational>& defender) {
    const std::size_t n = adversary.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rational total = 0;
    BigInt count = 0;
    do {
        Rational wins = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (adversary[i] > defender[perm[i]]) {
                wins += 1;
            } else if (adversary[i] == defender[perm[i]]) {
                wins += Rational(1, 2);
            }
        }
        total += wins;
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Rational(total / count);
}

}  // namespace posbid::testing
