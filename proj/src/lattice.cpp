#include "fermicorr/lattice.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fermicorr::lattice {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Visits the integer z-intervals of the column (x, y) admissible for a
// transfer p: |z| <= zmax, |(x,y,z)+p|^2 > S and optionally <= outer.
template <class F>
void column_transfer(std::int64_t x, std::int64_t y, std::int64_t zmax, std::int64_t shell,
                     const Mode& p, std::optional<std::int64_t> outer, F&& interval)
{
    const std::int64_t sx = x + p.x;
    const std::int64_t sy = y + p.y;
    const std::int64_t planar = sx * sx + sy * sy;

    std::int64_t lo = -zmax;
    std::int64_t hi = zmax;
    if (outer) {
        const std::int64_t rest = *outer - planar;
        if (rest < 0) return;
        const std::int64_t t = isqrt(rest);
        lo = std::max(lo, -p.z - t);
        hi = std::min(hi, -p.z + t);
        if (lo > hi) return;
    }
    const std::int64_t rest = shell - planar;
    if (rest < 0) {
        interval(lo, hi);
        return;
    }
    // (z + p.z)^2 <= rest is excluded: z in [-p.z - t, -p.z + t]
    const std::int64_t t = isqrt(rest);
    const std::int64_t ex_lo = -p.z - t;
    const std::int64_t ex_hi = -p.z + t;
    if (lo < ex_lo) interval(lo, std::min(hi, ex_lo - 1));
    if (hi > ex_hi) interval(std::max(lo, ex_hi + 1), hi);
}

} // namespace

std::string to_string(const Mode& m)
{
    std::ostringstream os;
    os << '(' << m.x << ',' << m.y << ',' << m.z << ')';
    return os.str();
}

double normalized_mu()
{
    return 4.0 * std::numbers::pi * std::numbers::pi *
           std::pow(3.0 / (4.0 * std::numbers::pi), 2.0 / 3.0);
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0) throw DomainError("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

FermiSystem::FermiSystem(double epsilon, double mu, std::int64_t shell, double radius2)
    : epsilon_(epsilon), mu_(mu), shell_(shell), n_(count_ball(shell)), radius2_(radius2),
      unit_(epsilon * epsilon * kTwoPi * kTwoPi)
{
}

FermiSystem FermiSystem::from_shell(std::int64_t shell, double offset, double mu)
{
    if (shell < 0) throw DomainError("shell threshold must be nonnegative");
    if (!(offset >= 0.0 && offset < 1.0)) throw DomainError("Fermi level offset must lie in [0, 1)");
    if (!(mu > 0.0)) throw DomainError("chemical potential must be positive");
    const double radius2 = static_cast<double>(shell) + offset;
    if (radius2 <= 0.0) throw DomainError("Fermi level at the origin: use offset > 0 for S = 0");
    const double epsilon = std::sqrt(mu / radius2) / kTwoPi;
    return FermiSystem(epsilon, mu, shell, radius2);
}

FermiSystem FermiSystem::from_epsilon(double epsilon, double mu)
{
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!(mu > 0.0)) throw DomainError("chemical potential must be positive");
    const double radius2 = mu / (epsilon * epsilon * kTwoPi * kTwoPi);
    if (radius2 > 1e15) throw CapacityError("Fermi ball too large for 64-bit lattice arithmetic");
    const auto shell = static_cast<std::int64_t>(std::floor(radius2));
    return FermiSystem(epsilon, mu, shell, radius2);
}

double FermiSystem::dispersion(const Mode& n) const noexcept
{
    return unit_ * std::abs(static_cast<double>(n.norm2()) - radius2_);
}

std::vector<Mode> FermiSystem::ball(std::size_t capacity) const
{
    return enumerate_ball(shell_, capacity);
}

std::vector<Mode> enumerate_ball(std::int64_t shell, std::size_t capacity)
{
    if (shell < 0) throw DomainError("shell threshold must be nonnegative");
    const std::int64_t total = count_ball(shell);
    if (static_cast<std::uint64_t>(total) > capacity)
        throw CapacityError("ball with S=" + std::to_string(shell) + " holds " +
                            std::to_string(total) + " modes, above the capacity of " +
                            std::to_string(capacity));
    std::vector<Mode> out;
    out.reserve(static_cast<std::size_t>(total));
    const std::int64_t r = isqrt(shell);
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t ry = isqrt(shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) {
            const std::int64_t zmax = isqrt(shell - x * x - y * y);
            for (std::int64_t z = -zmax; z <= zmax; ++z) out.push_back({x, y, z});
        }
    }
    return out;
}

std::int64_t count_ball(std::int64_t shell)
{
    if (shell < 0) return 0;
    std::int64_t count = 0;
    const std::int64_t r = isqrt(shell);
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t ry = isqrt(shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) count += 2 * isqrt(shell - x * x - y * y) + 1;
    }
    return count;
}

std::vector<std::int64_t> count_ball_table(std::int64_t max_shell)
{
    if (max_shell < 0) throw DomainError("shell threshold must be nonnegative");
    // r3[s] = number of representations of s as an ordered sum of three squares
    std::vector<std::int64_t> table(static_cast<std::size_t>(max_shell) + 1, 0);
    const std::int64_t r = isqrt(max_shell);
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t ry = isqrt(max_shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) {
            const std::int64_t planar = x * x + y * y;
            const std::int64_t zmax = isqrt(max_shell - planar);
            for (std::int64_t z = -zmax; z <= zmax; ++z) ++table[static_cast<std::size_t>(planar + z * z)];
        }
    }
    for (std::size_t s = 1; s < table.size(); ++s) table[s] += table[s - 1];
    return table;
}

double gauss_error(double radius)
{
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    const auto shell = static_cast<std::int64_t>(std::floor(radius * radius));
    return static_cast<double>(count_ball(shell)) - 4.0 * std::numbers::pi / 3.0 * radius * radius * radius;
}

ShellCount shell_count(const FermiSystem& system, double eta)
{
    if (!(eta > 0.0)) throw DomainError("energy window must be positive");
    // c * | |n|^2 - r2 | <= eta  <=>  r2 - w <= |n|^2 <= r2 + w
    const double w = eta / system.kinetic_unit();
    const double r2 = system.fermi_radius2();
    const auto hi = static_cast<std::int64_t>(std::floor(r2 + w));
    const auto lo = static_cast<std::int64_t>(std::ceil(r2 - w));
    std::int64_t count = 0;
    if (hi >= 0 && hi >= lo) count = count_ball(hi) - (lo >= 1 ? count_ball(lo - 1) : 0);
    return {eta, count, static_cast<double>(count) / static_cast<double>(system.particle_number())};
}

void for_each_transfer(const FermiSystem& system, const Mode& p,
                       std::optional<std::int64_t> outer_shell,
                       const std::function<void(const Mode&)>& visit)
{
    const std::int64_t shell = system.shell();
    const std::int64_t r = isqrt(shell);
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t ry = isqrt(shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) {
            const std::int64_t zmax = isqrt(shell - x * x - y * y);
            column_transfer(x, y, zmax, shell, p, outer_shell, [&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t z = lo; z <= hi; ++z) visit({x, y, z});
            });
        }
    }
}

std::vector<std::pair<std::int64_t, std::int64_t>>
transfer_dot_counts(const FermiSystem& system, const Mode& p, std::optional<std::int64_t> outer_shell)
{
    const std::int64_t shell = system.shell();
    const std::int64_t r = isqrt(shell);
    // |k.p| <= |k||p| <= r_ball * |p|
    const std::int64_t bound = (r + 1) * (isqrt(p.norm2()) + 1);
    std::vector<std::int64_t> dense(static_cast<std::size_t>(2 * bound + 1), 0);

    // Slabs of fixed x are independent; integer counts make the merge exact.
    const auto slabs = static_cast<std::size_t>(2 * r + 1);
    std::vector<std::vector<std::int64_t>> partial(slabs);
    parallel_for(slabs, [&](std::size_t i) {
        const std::int64_t x = static_cast<std::int64_t>(i) - r;
        auto& local = partial[i];
        const std::int64_t ry = isqrt(shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) {
            const std::int64_t zmax = isqrt(shell - x * x - y * y);
            const std::int64_t base = x * p.x + y * p.y;
            column_transfer(x, y, zmax, shell, p, outer_shell, [&](std::int64_t lo, std::int64_t hi) {
                if (local.empty()) local.assign(dense.size(), 0);
                if (p.z == 0) {
                    local[static_cast<std::size_t>(base + bound)] += hi - lo + 1;
                } else {
                    for (std::int64_t z = lo; z <= hi; ++z)
                        ++local[static_cast<std::size_t>(base + z * p.z + bound)];
                }
            });
        }
    });
    for (const auto& local : partial)
        for (std::size_t j = 0; j < local.size(); ++j) dense[j] += local[j];

    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::size_t j = 0; j < dense.size(); ++j)
        if (dense[j] != 0) out.emplace_back(static_cast<std::int64_t>(j) - bound, dense[j]);
    return out;
}

double i_mu(const FermiSystem& system, const Mode& p)
{
    if (p.is_zero()) return 0.0;
    CompensatedSum sum;
    const auto p2 = p.norm2();
    for (const auto& [dot, count] : transfer_dot_counts(system, p))
        sum += static_cast<double>(count) / (system.kinetic_unit() * static_cast<double>(p2 + 2 * dot));
    return sum.value() / static_cast<double>(system.particle_number());
}

std::vector<Mode> cubic_orbit_representatives(std::int64_t max_norm2)
{
    std::vector<Mode> reps;
    const std::int64_t r = isqrt(std::max<std::int64_t>(max_norm2, 0));
    for (std::int64_t x = 0; x <= r; ++x)
        for (std::int64_t y = 0; y <= x; ++y)
            for (std::int64_t z = 0; z <= y; ++z) {
                const Mode m{x, y, z};
                if (!m.is_zero() && m.norm2() <= max_norm2) reps.push_back(m);
            }
    return reps;
}

} // namespace fermicorr::lattice
