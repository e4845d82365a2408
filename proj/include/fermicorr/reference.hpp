#pragma once

// Direct, unoptimized evaluations of the defining formulas.  They share the
// domain types with the library but none of its algorithms: sets are found
// by scanning the enclosing cube and pair energies come from the dispersion
// e(k) = |eps^2 |k|^2 - mu| itself rather than from the integer identity.

#include "fermicorr/lattice.hpp"
#include "fermicorr/potential.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fermicorr::reference {

using lattice::FermiSystem;
using lattice::Mode;
using perturbation::PotentialSpec;

std::vector<Mode> cube_ball(std::int64_t shell);
std::int64_t count_ball(std::int64_t shell);
/// Number of n with |n|^2 == s, by scanning the cube.
std::int64_t sum_of_three_squares(std::int64_t s);
std::int64_t shell_count(const FermiSystem& system, double eta);

double hf_energy(const FermiSystem& system, const PotentialSpec& v);
double i_mu(const FermiSystem& system, const Mode& p);

struct SecondOrderSums {
    double direct = 0.0;
    double exchange = 0.0;
};

/// Both sums of the second-order energy over all admissible pairs, with
/// denominators raised to `power`.  `outer_shell` restricts the excited
/// modes to |k+p|^2 <= outer.
SecondOrderSums second_order(const FermiSystem& system, const PotentialSpec& v,
                             std::optional<std::int64_t> outer_shell = std::nullopt, int power = 1);

} // namespace fermicorr::reference
