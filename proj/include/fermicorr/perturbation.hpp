#pragma once

#include "fermicorr/lattice.hpp"
#include "fermicorr/potential.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fermicorr::perturbation {

using lattice::FermiSystem;

inline constexpr std::size_t kDefaultBruteForceCeiling = 5000;

struct SumOptions {
    /// Restricts excited modes to |k+p|^2 <= outer_shell (truncated model).
    std::optional<std::int64_t> outer_shell;
    /// Largest N for which pairwise enumeration is allowed.
    std::size_t brute_force_ceiling = kDefaultBruteForceCeiling;
};

enum class Method { Histogram, Support, BruteForce };

const char* to_string(Method m) noexcept;

/// Admissible k (k in B, k+p not in B) of one transfer p, binned by the
/// exact integer m = k.p.  Denominators are rebuilt as c (|p|^2 + 2m).
class EnergyHistogram {
public:
    EnergyHistogram(const FermiSystem& system, const Mode& p,
                    std::optional<std::int64_t> outer_shell = std::nullopt);

    const Mode& transfer() const noexcept { return p_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& bins() const noexcept { return bins_; }
    std::int64_t total() const noexcept { return total_; }
    /// Integer denominator |p|^2 + 2m of bin i, in kinetic units.
    std::int64_t denominator(std::size_t i) const noexcept { return p_.norm2() + 2 * bins_[i].first; }

private:
    Mode p_;
    std::vector<std::pair<std::int64_t, std::int64_t>> bins_;
    std::int64_t total_ = 0;
};

/// sum_{a,b} n_a(p) n_b(-p) / (E_a + E_b)^power for one transfer.
double histogram_convolution(const FermiSystem& system, const EnergyHistogram& plus,
                             const EnergyHistogram& minus, int power = 1);

struct SecondOrderResult {
    double direct = 0.0;
    double exchange = 0.0;
    double c2 = 0.0;
    Method direct_method = Method::Histogram;
    Method exchange_method = Method::Support;
};

/// Kinetic energy of the Fermi sea, sum_{k in B} eps^2 |k|^2, from an exact
/// integer sum of |n|^2.
double sea_kinetic_energy(const FermiSystem& system);

double hf_energy(const FermiSystem& system, const PotentialSpec& v);

/// First sum of the second-order energy, without its sign, via histograms.
double c2_direct(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts = {},
                 int power = 1);

/// Second (exchange) sum.  Method::Support enumerates k, p and the second
/// transfer q = p - k' + k over supp(v) only, O(|A_p| |supp|^2).
/// Method::BruteForce runs over all admissible pairs and refuses N above
/// the ceiling with BudgetError.
double c2_exchange(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts = {},
                   Method method = Method::Support, int power = 1);

SecondOrderResult c2_total(const FermiSystem& system, const PotentialSpec& v,
                           const SumOptions& opts = {}, Method exchange_method = Method::Support);

/// <Omega, F H0^{-1} F* Omega> from its own pairwise expansion
/// sum v(p) (v(p) - v(p-k'+k)) / E.  Subject to the brute-force ceiling.
double fhf_vacuum(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts = {});

struct TrialNormalization {
    double j1 = 0.0; ///< squared-denominator direct sum
    double j2 = 0.0; ///< squared-denominator exchange sum, with its minus sign
    double m = 1.0;  ///< sqrt(1 + j1 + j2)
};

TrialNormalization trial_normalization(const FermiSystem& system, const PotentialSpec& v,
                                       const SumOptions& opts = {},
                                       Method exchange_method = Method::Support);

} // namespace fermicorr::perturbation
