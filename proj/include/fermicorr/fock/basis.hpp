#pragma once

#include "fermicorr/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fermicorr::fock {

using lattice::FermiSystem;
using lattice::Mode;
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxModes = 64;
inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 21;

/// Truncation M of the mode lattice: all n with |n|^2 <= outer_shell, which
/// must contain the Fermi ball.  Mode i owns bit i of an occupation mask.
class ModeSet {
public:
    ModeSet(const FermiSystem& system, std::int64_t outer_shell);

    std::size_t size() const noexcept { return modes_.size(); }
    const std::vector<Mode>& modes() const noexcept { return modes_; }
    const Mode& operator[](std::size_t i) const noexcept { return modes_[i]; }
    std::optional<std::size_t> index(const Mode& m) const noexcept;
    std::int64_t outer_shell() const noexcept { return outer_; }

    /// Bits of the modes inside the Fermi ball.
    Mask fermi_mask() const noexcept { return fermi_; }
    bool in_ball(std::size_t i) const noexcept { return (fermi_ >> i) & 1u; }

private:
    std::vector<Mode> modes_;
    std::int64_t outer_;
    Mask fermi_ = 0;
};

/// A basis vector |mask> = a*_{i1} ... a*_{im} Omega with i1 < ... < im.
struct OccupationState {
    Mask mask = 0;
    int particle_count() const noexcept { return __builtin_popcountll(mask); }
};

/// Ordered list of occupation masks (increasing mask value) spanning a
/// subspace of the Fock space over `mode_count` modes.
class Basis {
public:
    /// All C(m, n) states with n particles.
    static Basis sector(std::size_t mode_count, std::size_t particles,
                        std::size_t cap = kDefaultDimensionCap);
    /// All 2^m states.
    static Basis full(std::size_t mode_count, std::size_t cap = kDefaultDimensionCap);
    /// States whose number of occupied modes outside `inner` equals the
    /// number of occupied modes inside it (the preimage of the
    /// |inner|-particle sector under the particle-hole map).
    static Basis balanced(std::size_t mode_count, Mask inner, std::size_t cap = kDefaultDimensionCap);

    /// States of `parent` for which keep(mask) holds, order preserved.
    template <class Pred>
    static Basis subset(const Basis& parent, Pred keep)
    {
        std::vector<Mask> states;
        for (Mask m : parent.states_)
            if (keep(m)) states.push_back(m);
        return Basis(parent.modes_, std::move(states));
    }

    std::size_t dimension() const noexcept { return states_.size(); }
    std::size_t mode_count() const noexcept { return modes_; }
    Mask operator[](std::size_t i) const noexcept { return states_[i]; }
    const std::vector<Mask>& states() const noexcept { return states_; }
    std::optional<std::size_t> find(Mask m) const noexcept;
    /// FNV-1a over the mode count and the mask list.
    std::uint64_t hash() const noexcept;

private:
    Basis(std::size_t modes, std::vector<Mask> states) : modes_(modes), states_(std::move(states)) {}
    std::size_t modes_;
    std::vector<Mask> states_;
};

/// Total lattice momentum sum_{i occupied} n_i of a mask.
Mode total_momentum(const ModeSet& modes, Mask mask) noexcept;

/// States of `parent` with total lattice momentum `p`.
Basis momentum_block(const Basis& parent, const ModeSet& modes, const Mode& p);

/// Binomial coefficient, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k) noexcept;

/// Throws DegeneracyError unless `particles` fills a closed shell of the
/// mode set, i.e. equals the number of modes with |n|^2 <= s for some s.
void require_closed_shell(const ModeSet& modes, std::size_t particles);

} // namespace fermicorr::fock
