// SPDX-License-Identifier: MIT
#include "posbid/bid_profile.hpp"

#include "posbid/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace posbid {

BidProfile BidProfile::from_bids(std::vector<Rational> bids) {
    if (bids.empty()) throw DomainError("a bid profile needs at least one bid");
    if (!std::is_sorted(bids.begin(), bids.end())) std::sort(bids.begin(), bids.end());
    if (bids.front() < 0) throw DomainError("bids must be nonnegative");

    BidProfile p;
    p.bids_.reserve(bids.size() + 1);
    p.bids_.emplace_back(0);
    for (auto& b : bids) p.bids_.push_back(std::move(b));

    const long n = p.size();
    p.top_sums_.resize(static_cast<std::size_t>(n) + 1);
    p.top_sums_[0] = 0;
    for (long ell = 1; ell <= n; ++ell)
        p.top_sums_[static_cast<std::size_t>(ell)] =
            p.top_sums_[static_cast<std::size_t>(ell - 1)] + p.bids_[static_cast<std::size_t>(n - ell + 1)];
    return p;
}

const Rational& BidProfile::bid(long i) const {
    if (i < 0 || i > size()) throw DomainError("bid index out of range");
    return bids_[static_cast<std::size_t>(i)];
}

const Rational& BidProfile::top_sum(long ell) const {
    if (ell < 0 || ell > size()) throw DomainError("top-block size out of range");
    return top_sums_[static_cast<std::size_t>(ell)];
}

std::vector<Rational> BidProfile::ascending() const {
    return std::vector<Rational>(bids_.begin() + 1, bids_.end());
}

long BidProfile::count_below(const Rational& value) const {
    auto it = std::lower_bound(bids_.begin() + 1, bids_.end(), value);
    return static_cast<long>(it - (bids_.begin() + 1));
}

long BidProfile::count_at_most(const Rational& value) const {
    auto it = std::upper_bound(bids_.begin() + 1, bids_.end(), value);
    return static_cast<long>(it - (bids_.begin() + 1));
}

bool BidProfile::contains(const Rational& value) const {
    return std::binary_search(bids_.begin() + 1, bids_.end(), value);
}

Rational expected_win_exact(const BidProfile& adversary, const BidProfile& defender) {
    const long n = adversary.size();
    if (n != defender.size())
        throw DomainError("expected_win_exact requires equal bid counts");
    // 2 * (wins per matching) accumulated as an integer: 2*below + ties.
    BigInt doubled = 0;
    for (long i = 1; i <= n; ++i) {
        const Rational& a = adversary.bid(i);
        const long below = defender.count_below(a);
        const long ties = defender.count_at_most(a) - below;
        doubled += 2 * below + ties;
    }
    return Rational(doubled, BigInt(2) * n);
}

WinSplit zero_sum_check(const BidProfile& adversary, const BidProfile& defender) {
    WinSplit split{expected_win_exact(adversary, defender),
                   expected_win_exact(defender, adversary)};
    if (split.adversary + split.defender != adversary.size())
        throw InvariantError("zero-sum", "expected wins do not sum to the object count");
    return split;
}

std::vector<Rational> parse_bid_lines(std::istream& in) {
    std::vector<Rational> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        try {
            out.push_back(parse_rational(std::string_view(line).substr(begin, end - begin + 1)));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "line " << line_no << ": " << e.what();
            throw ValidationError(os.str());
        }
    }
    return out;
}

void write_bid_lines(std::ostream& out, const std::vector<Rational>& bids) {
    for (const auto& b : bids) out << format_rational(b) << '\n';
}

}  // namespace posbid
