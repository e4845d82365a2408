#include "fermicorr/fock/basis.hpp"

#include "fermicorr/error.hpp"

#include <algorithm>
#include <limits>

namespace fermicorr::fock {

ModeSet::ModeSet(const FermiSystem& system, std::int64_t outer_shell) : outer_(outer_shell)
{
    if (outer_shell < system.shell())
        throw DomainError("mode set must contain the Fermi ball (outer shell " + std::to_string(outer_shell) +
                          " < S = " + std::to_string(system.shell()) + ")");
    if (static_cast<std::size_t>(lattice::count_ball(outer_shell)) > kMaxModes)
        throw CapacityError("mode set of shell " + std::to_string(outer_shell) + " exceeds " +
                            std::to_string(kMaxModes) + " modes");
    modes_ = lattice::enumerate_ball(outer_shell);
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (system.contains(modes_[i])) fermi_ |= Mask{1} << i;
}

std::optional<std::size_t> ModeSet::index(const Mode& m) const noexcept
{
    auto it = std::lower_bound(modes_.begin(), modes_.end(), m);
    if (it == modes_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r * (n-k+i) / i stays integral at every step
        if (r > std::numeric_limits<std::size_t>::max() / (n - k + i)) return std::numeric_limits<std::size_t>::max();
        r = r * (n - k + i) / i;
    }
    return r;
}

Basis Basis::sector(std::size_t mode_count, std::size_t particles, std::size_t cap)
{
    if (mode_count > kMaxModes) throw CapacityError("more than 64 modes");
    if (particles > mode_count) throw DomainError("particle number exceeds mode count");
    const std::size_t dim = binomial(mode_count, particles);
    if (dim > cap)
        throw CapacityError("sector dimension C(" + std::to_string(mode_count) + "," + std::to_string(particles) +
                            ") = " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    std::vector<Mask> states;
    states.reserve(dim);
    if (particles == 0) return Basis(mode_count, {0});
    Mask m = (particles == 64) ? ~Mask{0} : (Mask{1} << particles) - 1;
    for (std::size_t i = 0; i < dim; ++i) {
        states.push_back(m);
        if (i + 1 == dim) break;
        // Gosper's hack: next larger mask with the same popcount
        const Mask c = m & (~m + 1);
        const Mask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    return Basis(mode_count, std::move(states));
}

Basis Basis::full(std::size_t mode_count, std::size_t cap)
{
    if (mode_count >= 63 || (std::size_t{1} << mode_count) > cap)
        throw CapacityError("full Fock space over " + std::to_string(mode_count) + " modes exceeds cap " +
                            std::to_string(cap));
    std::vector<Mask> states(std::size_t{1} << mode_count);
    for (std::size_t i = 0; i < states.size(); ++i) states[i] = i;
    return Basis(mode_count, std::move(states));
}

Basis Basis::balanced(std::size_t mode_count, Mask inner, std::size_t cap)
{
    if (mode_count > kMaxModes) throw CapacityError("more than 64 modes");
    const Mask all = mode_count == 64 ? ~Mask{0} : (Mask{1} << mode_count) - 1;
    inner &= all;
    const std::size_t n_in = static_cast<std::size_t>(__builtin_popcountll(inner));
    // The map x -> x xor inner is a bijection onto the |inner|-particle sector.
    const std::size_t dim = binomial(mode_count, n_in);
    if (dim > cap)
        throw CapacityError("balanced sector dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(cap));
    const Basis image = sector(mode_count, n_in, cap);
    std::vector<Mask> states;
    states.reserve(dim);
    for (Mask y : image.states()) states.push_back(y ^ inner);
    std::sort(states.begin(), states.end());
    return Basis(mode_count, std::move(states));
}

std::optional<std::size_t> Basis::find(Mask m) const noexcept
{
    auto it = std::lower_bound(states_.begin(), states_.end(), m);
    if (it == states_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

std::uint64_t Basis::hash() const noexcept
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(modes_);
    for (Mask m : states_) mix(m);
    return h;
}

Mode total_momentum(const ModeSet& modes, Mask mask) noexcept
{
    Mode total{};
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) total = total + modes[i];
    return total;
}

Basis momentum_block(const Basis& parent, const ModeSet& modes, const Mode& p)
{
    return Basis::subset(parent, [&](Mask m) { return total_momentum(modes, m) == p; });
}

void require_closed_shell(const ModeSet& modes, std::size_t particles)
{
    if (particles == 0) return;
    std::vector<std::int64_t> norms;
    for (const auto& m : modes.modes()) norms.push_back(m.norm2());
    std::sort(norms.begin(), norms.end());
    // closed iff the particle count ends exactly at a shell boundary
    if (particles <= norms.size() && (particles == norms.size() || norms[particles] != norms[particles - 1])) return;
    throw DegeneracyError("N = " + std::to_string(particles) +
                          " is not a closed shell of the mode set; the unperturbed ground state is degenerate");
}

} // namespace fermicorr::fock
