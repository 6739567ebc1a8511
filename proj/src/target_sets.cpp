// SPDX-License-Identifier: MIT
#include "posbid/target_sets.hpp"

#include "posbid/errors.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace posbid {
namespace {

// Postcondition guard shared by the builders.
void certify(const char* tag, const BlockContext& ctx, const TargetSet& set,
             const Rational& quota, long cost_block, long min_size, long max_size) {
    if (set.size() < min_size || set.size() > max_size) {
        std::ostringstream os;
        os << "size " << set.size() << " outside [" << min_size << ", " << max_size << "]";
        throw InvariantError(tag, os.str());
    }
    if (!is_quota_set(set, ctx.profile(), quota, cost_block))
        throw InvariantError(tag, "quota certificate failed");
}

void remove_or_throw(const char* tag, TargetSet& set, long index) {
    if (!set.remove_one(index)) throw InvariantError(tag, "missing removal target");
}

TargetSet full_blocks(long ell, long k) {
    std::vector<long> idx;
    idx.reserve(static_cast<std::size_t>(ell) * k);
    for (long copy = 0; copy < k; ++copy)
        for (long i = 1; i <= ell; ++i) idx.push_back(i);
    return TargetSet::of(ell, std::move(idx));
}

long floor_div2(long num, long den) { return num / den; }  // nonneg operands
long ceil_div2(long num, long den) { return (num + den - 1) / den; }

}  // namespace

TargetSet TargetSet::of(long ell, std::vector<long> indices) {
    if (ell < 1) throw DomainError("target set block size must be >= 1");
    for (long i : indices)
        if (i < 0 || i > ell) throw DomainError("target set index out of [0, ell]");
    std::sort(indices.begin(), indices.end());
    return TargetSet{ell, std::move(indices)};
}

TargetSet TargetSet::united(const TargetSet& other) const {
    if (ell != other.ell) throw DomainError("cannot unite target sets of different block sizes");
    std::vector<long> merged;
    merged.reserve(indices.size() + other.indices.size());
    std::merge(indices.begin(), indices.end(), other.indices.begin(), other.indices.end(),
               std::back_inserter(merged));
    return TargetSet{ell, std::move(merged)};
}

bool TargetSet::remove_one(long index) {
    auto it = std::lower_bound(indices.begin(), indices.end(), index);
    if (it == indices.end() || *it != index) return false;
    indices.erase(it);
    return true;
}

BigInt index_sum(const TargetSet& set) {
    BigInt sum = 0;
    for (long i : set.indices) sum += i;
    return sum;
}

Rational bid_sum(const BidProfile& profile, const TargetSet& set) {
    const long n = profile.size();
    if (set.ell > n) throw DomainError("target set block size exceeds the profile size");
    Rational sum = 0;
    for (long i : set.indices) sum += profile.bid(n - set.ell + i);
    return sum;
}

std::string to_string(FeasibilityFailure failure) {
    switch (failure) {
        case FeasibilityFailure::None: return "none";
        case FeasibilityFailure::SizeOverflow: return "sizeOverflow";
        case FeasibilityFailure::MassShortfall: return "massShortfall";
        case FeasibilityFailure::BudgetOverrun: return "budgetOverrun";
    }
    throw DomainError("unknown feasibility failure");
}

Feasibility check_feasibility(const TargetSet& set, const BidProfile& profile,
                              const Rational& ratio, const Rational& beta) {
    const long n = profile.size();
    const long ell = set.ell;
    if (ell > n) throw DomainError("target set block size exceeds the profile size");
    if (beta <= 0) throw DomainError("defender budget must be positive");

    if (set.size() > n) return {false, FeasibilityFailure::SizeOverflow};

    const Rational rounded = rounded_ratio(ratio, ell);
    // rounded * ell (ell + 1) / 2 is an exact integer threshold.
    const Rational threshold = rounded * BigInt(ell) * (ell + 1) / 2;
    if (Rational(index_sum(set)) < threshold) return {false, FeasibilityFailure::MassShortfall};

    const Rational slack_cost =
        bid_sum(profile, set) + Rational(n - set.size()) * profile.bid(n - ell);
    if (!(slack_cost < beta * ratio)) return {false, FeasibilityFailure::BudgetOverrun};

    return {true, FeasibilityFailure::None};
}

bool is_quota_set(const TargetSet& set, const BidProfile& profile, const Rational& quota,
                  long cost_block) {
    if (quota < 0) throw DomainError("quota must be nonnegative");
    if (cost_block < 0) cost_block = set.ell;
    const Rational mass_needed = quota * BigInt(set.ell) * (set.ell + 1) / 2;
    if (Rational(index_sum(set)) < mass_needed) return false;
    return bid_sum(profile, set) <= quota * profile.top_sum(cost_block);
}

BlockContext::BlockContext(const BidProfile& profile, long ell)
    : profile_(&profile), ell_(ell) {
    if (ell < 1 || ell > profile.size())
        throw DomainError("block size must be in [1, n]");

    const Rational unit = top_sum() * make_rational(2, BigInt(ell) * (ell + 1));
    Rational best_gap;   // x(i) - y(i)
    Rational min_cost;   // x(i) + x(ell - i + 1)
    Rational max_cost;
    Rational max_adj;
    for (long i = 1; i <= ell; ++i) {
        const Rational gap = x(i) - unit * i;
        if (best_surplus_ == 0 || gap > best_gap) {
            best_gap = gap;
            best_surplus_ = i;
        }
        const Rational pair_cost = x(i) + x(ell - i + 1);
        if (min_pair_ == 0 || pair_cost < min_cost) {
            min_cost = pair_cost;
            min_pair_ = i;
        }
        if (max_pair_ == 0 || pair_cost > max_cost) {
            max_cost = pair_cost;
            max_pair_ = i;
        }
        if (i <= ell - 1) {
            const Rational adj_cost = x(i) + x(ell - i);
            if (adjacent_pair_ == 0 || adj_cost > max_adj) {
                max_adj = adj_cost;
                adjacent_pair_ = i;
            }
        }
    }
}

const Rational& BlockContext::x(long i) const {
    if (i < 0 || i > ell_) throw DomainError("block index out of [0, ell]");
    return profile_->bid(n() - ell_ + i);
}

Rational BlockContext::y(long i) const {
    return top_sum() * make_rational(2 * BigInt(i), BigInt(ell_) * (ell_ + 1));
}

long BlockContext::max_adjacent_pair() const {
    if (ell_ < 2) throw DomainError("max_adjacent_pair needs a block of size >= 2");
    return adjacent_pair_;
}

TargetSet pair_multiset(const BlockContext& ctx, long d) {
    if (d < 0) throw DomainError("pair count must be >= 0");
    const long ell = ctx.ell();
    const long lo = ctx.min_pair();
    const long hi = ell - lo + 1;
    std::vector<long> idx;
    idx.reserve(static_cast<std::size_t>(2 * d));
    for (long copy = 0; copy < d; ++copy) {
        idx.push_back(lo);
        idx.push_back(hi);
    }
    TargetSet set = TargetSet::of(ell, std::move(idx));
    certify("pair-multiset", ctx, set, make_rational(2 * BigInt(d), BigInt(ell)), ell, 2 * d,
            2 * d);
    return set;
}

TargetSet trimmed_block(const BlockContext& ctx, long h) {
    const long ell = ctx.ell();
    if (h < 0 || 2 * h > ell + 1) throw DomainError("trim mass must satisfy 0 <= 2h <= ell+1");

    const char* tag = "trimmed-block";
    TargetSet set = full_blocks(ell, 1);
    if (h == 0) {
        tag = "trimmed-block/full";
    } else if (2 * h == ell + 1) {
        tag = "trimmed-block/degenerate-pairs";
        set = pair_multiset(ctx, (ell - 1) / 2);
    } else {
        const long i0 = ctx.best_surplus();
        if (i0 == h) {
            tag = "trimmed-block/drop";
            remove_or_throw(tag, set, h);
        } else if (i0 > h) {
            tag = "trimmed-block/shift";
            set = set.united(TargetSet::of(ell, {i0 - h}));
            remove_or_throw(tag, set, i0);
        } else if (ctx.x(ell - h) >= ctx.y(ell - h)) {
            tag = "trimmed-block/two-drop-low";
            set = set.united(TargetSet::of(ell, {i0 - 2 * h + ell}));
            remove_or_throw(tag, set, i0);
            remove_or_throw(tag, set, ell - h);
        } else if (ctx.x(ell + 1 - h) >= ctx.y(ell + 1 - h)) {
            tag = "trimmed-block/two-drop-high";
            set = set.united(TargetSet::of(ell, {i0 - 2 * h + ell + 1}));
            remove_or_throw(tag, set, i0);
            remove_or_throw(tag, set, ell + 1 - h);
        } else if (ell % 2 == 0) {
            tag = "trimmed-block/swap-even";
            const long i2 = ctx.max_pair();
            set = set.united(TargetSet::of(ell, {ell + 1 - h}));
            remove_or_throw(tag, set, i2);
            remove_or_throw(tag, set, ell + 1 - i2);
        } else {
            tag = "trimmed-block/swap-odd";
            const long i3 = ctx.max_adjacent_pair();
            set = set.united(TargetSet::of(ell, {ell - h}));
            if (ctx.x(i3) + ctx.x(ell - i3) >= ctx.x(ell)) {
                remove_or_throw(tag, set, i3);
                remove_or_throw(tag, set, ell - i3);
            } else {
                remove_or_throw(tag, set, ell);
            }
        }
    }

    const Rational quota =
        Rational(1) - make_rational(2 * BigInt(h), BigInt(ell) * (ell + 1));
    certify(tag, ctx, set, quota, ell, ell - 1, ell);
    return set;
}

TargetSet stacked_block(const BlockContext& ctx, long k, long h) {
    const long ell = ctx.ell();
    if (k < 1) throw DomainError("block count must be >= 1");
    if (h < 0 || h > ell) throw DomainError("surplus mass must be in [0, ell]");

    const char* tag = "stacked-block";
    TargetSet set{ell, {}};
    if (h == 0) {
        tag = "stacked-block/blocks";
        set = full_blocks(ell, k);
    } else if (2 * h >= ell + 1) {
        tag = "stacked-block/blocks-minus-trim";
        set = full_blocks(ell, k - 1).united(pair_multiset(ctx, 1)).united(
            trimmed_block(ctx, ell + 1 - h));
    } else if (ctx.x(h) <= ctx.y(h)) {
        tag = "stacked-block/cheap-single";
        set = full_blocks(ell, k).united(TargetSet::of(ell, {h}));
    } else {
        const long i0 = ctx.best_surplus();
        const long reroute = i0 + 2 * h - ell - 1;
        if (reroute >= 1 && reroute <= ell && i0 != h) {
            tag = "stacked-block/pair-reroute";
            set = full_blocks(ell, k).united(pair_multiset(ctx, 1)).united(
                TargetSet::of(ell, {reroute}));
            remove_or_throw(tag, set, i0);
            remove_or_throw(tag, set, h);
        } else {
            tag = "stacked-block/surplus-shift";
            if (i0 + h < 1 || i0 + h > ell)
                throw InvariantError(tag, "shift target escaped the block");
            set = full_blocks(ell, k).united(TargetSet::of(ell, {i0 + h}));
            remove_or_throw(tag, set, i0);
        }
    }

    const Rational quota = k + make_rational(2 * BigInt(h), BigInt(ell) * (ell + 1));
    certify(tag, ctx, set, quota, ell, k * ell + floor_div2(2 * h, ell + 1),
            k * ell + ceil_div2(2 * h, ell + 1));
    return set;
}

TargetSet padded_pairs(const BlockContext& ctx, long d, long h) {
    const long ell = ctx.ell();
    if (d < 1) throw DomainError("pair count must be >= 1");
    if (h < 0 || h > ell) throw DomainError("remainder mass must be in [0, ell]");

    std::optional<TargetSet> set;
    const char* tag = "padded-pairs";
    for (long i4 = 0; i4 <= h && !set; ++i4) {
        if (ctx.x(i4) + ctx.x(h - i4) <= ctx.y(h)) {
            tag = "padded-pairs/split-remainder";
            set = pair_multiset(ctx, d).united(TargetSet::of(ell, {i4, h - i4}));
        }
    }
    for (long i5 = 1; i5 <= ell - h && !set; ++i5) {
        if (ctx.x(h + i5) + ctx.x(ell + 1 - i5) <= ctx.y(ell + 1 + h)) {
            tag = "padded-pairs/lifted-pair";
            set = pair_multiset(ctx, d - 1).united(TargetSet::of(ell, {h + i5, ell + 1 - i5}));
        }
    }
    if (!set)
        throw InvariantError("padded-pairs/exhausted",
                             "no affordable remainder pair; requires a positive bid below the "
                             "block (impossible when x(0) == 0)");

    const Rational quota = make_rational(2 * BigInt(d), BigInt(ell)) +
                           make_rational(2 * BigInt(h), BigInt(ell) * (ell + 1));
    certify(tag, ctx, *set, quota, ell, 0, 2 * d + 2);
    return *set;
}

TargetSet shifted_pairs(const BlockContext& ctx, long d) {
    const long ell = ctx.ell();
    if (d < 0) throw DomainError("pair count must be >= 0");
    if (ell + 1 > ctx.n()) throw DomainError("shifted pairs need ell <= n - 1");

    const BlockContext up(ctx.profile(), ell + 1);
    const long lo = up.min_pair();          // pair {lo, ell + 2 - lo} one block up
    const long a = lo - 1;                  // shifted down one index
    const long b = ell + 1 - lo;
    std::vector<long> idx;
    idx.reserve(static_cast<std::size_t>(2 * d));
    for (long copy = 0; copy < d; ++copy) {
        idx.push_back(a);
        idx.push_back(b);
    }
    TargetSet set = TargetSet::of(ell, std::move(idx));
    if (index_sum(set) != BigInt(d) * ell)
        throw InvariantError("shifted-pairs", "index mass is not d * ell");
    certify("shifted-pairs", ctx, set, make_rational(2 * BigInt(d), BigInt(ell + 1)), ell + 1,
            2 * d, 2 * d);
    return set;
}

BoundaryPlans boundary_plans(const BlockContext& ctx, const Spectrum& spectrum) {
    const long ell = ctx.ell();
    const long k = spectrum.whole;
    const long d_up = spectrum.pairs_up;
    const long h_up = spectrum.rem_up;
    if (k < 1) throw DomainError("boundary plans need a whole part >= 1");
    if (h_up < 0 || 2 * h_up > ell)
        throw DomainError("boundary plans need 0 <= 2 h' <= ell");

    const TargetSet stack = stacked_block(ctx, k, 0);
    BoundaryPlans plans;
    plans.with_rem = stack.united(shifted_pairs(ctx, d_up)).united(TargetSet::of(ell, {h_up}));
    plans.without_rem = stack.united(shifted_pairs(ctx, d_up + 1));
    remove_or_throw("boundary/remove", plans.without_rem, h_up);

    // Mass certificates: with_rem hits the feasibility threshold exactly;
    // without_rem exceeds it by ell - 2 h' >= 0.
    const BigInt threshold = BigInt(k) * ell * (ell + 1) / 2 + BigInt(d_up) * ell + h_up;
    if (index_sum(plans.with_rem) != threshold)
        throw InvariantError("boundary/with-rem", "mass does not hit the threshold");
    if (index_sum(plans.without_rem) != threshold + (ell - 2 * h_up))
        throw InvariantError("boundary/without-rem", "mass offset is not ell - 2 h'");
    if (plans.with_rem.size() != plans.without_rem.size())
        throw InvariantError("boundary/size", "plans differ in size");
    return plans;
}

std::vector<Rational> counter_bids(const TargetSet& set, const BidProfile& profile,
                                   const Rational& ratio, const Rational& beta) {
    const long n = profile.size();
    const long ell = set.ell;
    if (ell > n) throw DomainError("target set block size exceeds the profile size");
    if (set.size() > n) throw DomainError("target set has more indices than objects");
    if (beta <= 0) throw DomainError("defender budget must be positive");

    std::vector<Rational> base;
    base.reserve(static_cast<std::size_t>(n));
    base.assign(static_cast<std::size_t>(n - set.size()), profile.bid(n - ell));
    for (long i : set.indices) base.push_back(profile.bid(n - ell + i));

    Rational base_cost = 0;
    for (const auto& b : base) base_cost += b;
    const Rational budget = beta * ratio;
    const Rational headroom = (budget - base_cost) / (n + 1);
    if (headroom <= 0)
        throw DomainError("target set does not leave budget headroom below beta * R");

    // delta = headroom / j for the least positive integer j such that no
    // raised bid collides with a defender value: j is bad iff some defender
    // bid v and base bid x satisfy headroom / j == v - x.
    std::vector<BigInt> bad_js;
    {
        std::vector<Rational> distinct(base.begin(), base.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (const auto& x : distinct) {
            for (long i = 1; i <= n; ++i) {
                const Rational diff = profile.bid(i) - x;
                if (diff <= 0) continue;
                const Rational j = headroom / diff;
                if (boost::multiprecision::denominator(j) == 1)
                    bad_js.push_back(boost::multiprecision::numerator(j));
            }
        }
        std::sort(bad_js.begin(), bad_js.end());
        bad_js.erase(std::unique(bad_js.begin(), bad_js.end()), bad_js.end());
    }
    BigInt j = 1;
    for (const BigInt& bad : bad_js) {
        if (bad < j) continue;
        if (bad == j) ++j; else break;
    }
    const Rational delta = headroom / j;

    std::vector<Rational> bids;
    bids.reserve(static_cast<std::size_t>(n));
    Rational total = 0;
    for (const auto& x : base) {
        bids.push_back(Rational(x + delta));
        total += bids.back();
        if (profile.contains(bids.back()))
            throw InvariantError("counter-bids/collision", "raised bid equals a defender value");
    }
    if (total > budget)
        throw InvariantError("counter-bids/budget", "raised bids exceed the adversary budget");
    if (static_cast<long>(bids.size()) != n)
        throw InvariantError("counter-bids/count", "bid count is not n");
    std::sort(bids.begin(), bids.end());
    return bids;
}

}  // namespace posbid
