// SPDX-License-Identifier: MIT
#include "posbid/figures.hpp"

#include "posbid/errors.hpp"

#include <cstdlib>

namespace posbid {

std::vector<RatioRow> ratio_grid(long n_max, const std::vector<Rational>& ratios) {
    if (n_max < 1) throw ValidationError("grid needs at least one object count");
    for (const auto& r : ratios)
        if (!(r > 0)) throw ValidationError("budget ratios must be positive");

    std::vector<RatioRow> rows;
    rows.reserve(ratios.size() * static_cast<std::size_t>(n_max));
    for (const auto& r : ratios) {
        for (long n = 1; n <= n_max; ++n) {
            const EquilibriumResult eq = equilibrium(n, r);
            const EffectiveRatios ratios_at = effective_ratios(n, r);
            rows.push_back({n, r, eq.value, ratios_at.adversary, ratios_at.defender,
                            eq.fidelity});
        }
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_table(const Rational& ratio,
                                              const std::vector<long>& n_points) {
    if (!(ratio > 0)) throw ValidationError("budget ratio must be positive");
    const Rational limit = limit_ratios(ratio).defender;

    std::vector<ConvergenceRow> rows;
    rows.reserve(n_points.size());
    for (const long n : n_points) {
        if (n < 1) throw ValidationError("object counts must be at least 1");
        const Rational defender = effective_ratios(n, ratio).defender;
        const Rational gap = defender - limit;
        rows.push_back({n, defender, gap < 0 ? Rational(-gap) : gap});
    }
    return rows;
}

void write_ratio_csv(const std::vector<RatioRow>& rows, std::ostream& out, int decimals) {
    out << "n,R,equilibrium,E_A,E_D,fidelity";
    if (decimals > 0) out << ",equilibrium_dec,E_A_dec,E_D_dec";
    out << '\n';
    for (const auto& row : rows) {
        out << row.n << ',' << format_rational(row.ratio) << ',' << format_rational(row.value)
            << ',' << format_rational(row.adversary) << ',' << format_rational(row.defender)
            << ',' << to_string(row.fidelity);
        if (decimals > 0)
            out << ',' << format_decimal(row.value, decimals) << ','
                << format_decimal(row.adversary, decimals) << ','
                << format_decimal(row.defender, decimals);
        out << '\n';
    }
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out,
                           int decimals) {
    out << "n,E_D,limit_gap";
    if (decimals > 0) out << ",E_D_dec,limit_gap_dec";
    out << '\n';
    for (const auto& row : rows) {
        out << row.n << ',' << format_rational(row.defender) << ','
            << format_rational(row.limit_gap);
        if (decimals > 0)
            out << ',' << format_decimal(row.defender, decimals) << ','
                << format_decimal(row.limit_gap, decimals);
        out << '\n';
    }
}

}  // namespace posbid
