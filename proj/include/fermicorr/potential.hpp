#pragma once

#include "fermicorr/lattice.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fermicorr::perturbation {

using lattice::Mode;

/// Finitely supported Fourier coefficients v(p) >= 0 with v(p) = v(-p),
/// keyed by the lattice transfer p (physical momentum 2 pi p).
class PotentialSpec {
public:
    using Entry = std::pair<Mode, double>;

    PotentialSpec() = default;

    /// Validates and sorts the entries.  Zero values are dropped.  Negative,
    /// non-finite or duplicated entries throw DomainError.  When an entry p
    /// has no partner -p: with `complete_symmetry` the mirror is inserted
    /// and a message appended to `warnings` (if given), otherwise the
    /// asymmetry is an error.
    static PotentialSpec from_entries(std::vector<Entry> entries, bool complete_symmetry = false,
                                      std::vector<std::string>* warnings = nullptr);

    /// v = g at +p and -p.
    static PotentialSpec pair(const Mode& p, double g);
    /// v = g on every p with |p|^2 == norm2.
    static PotentialSpec shell(std::int64_t norm2, double g);
    /// v = g on every p with |p|^2 <= norm2 (including p = 0).
    static PotentialSpec ball(std::int64_t norm2, double g);

    double operator()(const Mode& p) const noexcept;
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    /// sum_p v(p)
    double l1_norm() const noexcept;
    double max_value() const noexcept;
    /// sum_p |2 pi p| v(p)^2, the weight entering the eps -> 0 asymptotics.
    double physical_momentum_weight() const noexcept;

    PotentialSpec scaled(double g) const;

private:
    explicit PotentialSpec(std::vector<Entry> sorted) : entries_(std::move(sorted)) {}
    std::vector<Entry> entries_;
};

/// Reads the plain-text table format: one `px py pz value` per line, `#`
/// starts a comment, blank lines ignored.  Symmetry is completed with a
/// warning.  Errors carry the offending line number (ConfigError).
PotentialSpec parse_potential_table(std::istream& in, const std::string& source_name,
                                    std::vector<std::string>* warnings = nullptr);

/// Inline forms: `single:p=(x,y,z):g=G`, `shell:r2=R:g=G`, `ball:r2=R:g=G`,
/// `zero`, or otherwise a path to a table file.
PotentialSpec parse_potential(const std::string& spec, std::vector<std::string>* warnings = nullptr);

} // namespace fermicorr::perturbation
