// SPDX-License-Identifier: MIT
//
// Tabulated equilibrium data: per-unit-budget winning ratios over (n, R)
// grids and their convergence toward the closed-form limits.  The tables are
// exact rationals; CSV output (optionally with decimal companion columns) is
// the plotting interface, rendered by external tooling such as the gnuplot
// template in docs/.

#pragma once

#include "posbid/equilibrium.hpp"
#include "posbid/rational.hpp"

#include <ostream>
#include <vector>

namespace posbid {

// One grid cell: the game value and both sides' effective winning ratios.
// Invariants: adversary = value (R+1) / (n R); defender = (n - value)(R+1)/n.
struct RatioRow {
    long n = 0;
    Rational ratio;
    Rational value;
    Rational adversary;
    Rational defender;
    Fidelity fidelity = Fidelity::Proved;
};

// One row per (R, n) pair in R-major, n-minor order, n = 1..n_max.
// Requires n_max >= 1 and every ratio positive (ValidationError).
std::vector<RatioRow> ratio_grid(long n_max, const std::vector<Rational>& ratios);

// The defender's ratio at growing n, with its exact distance to the limit.
struct ConvergenceRow {
    long n = 0;
    Rational defender;
    Rational limit_gap;  // |defender - limit_ratios(R).defender|
};

// Requires R > 0 and every n >= 1 (ValidationError).
std::vector<ConvergenceRow> convergence_table(const Rational& ratio,
                                              const std::vector<long>& n_points);

// CSV with header "n,R,equilibrium,E_A,E_D,fidelity"; rationals as "p/q".
// decimals > 0 appends equilibrium_dec, E_A_dec, E_D_dec columns rounded to
// that many fractional digits.
void write_ratio_csv(const std::vector<RatioRow>& rows, std::ostream& out, int decimals = 0);

// CSV with header "n,E_D,limit_gap"; same decimal companion rule.
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out,
                           int decimals = 0);

}  // namespace posbid
