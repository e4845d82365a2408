#include "fermicorr/reference.hpp"

#include "fermicorr/summation.hpp"

#include <cmath>

namespace fermicorr::reference {

namespace {

std::int64_t cube_radius(std::int64_t shell)
{
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= shell) ++r;
    return r;
}

bool in_ball(const FermiSystem& s, const Mode& k) { return k.norm2() <= s.shell(); }

bool excited(const FermiSystem& s, const Mode& k, std::optional<std::int64_t> outer)
{
    return !in_ball(s, k) && (!outer || k.norm2() <= *outer);
}

} // namespace

std::vector<Mode> cube_ball(std::int64_t shell)
{
    const std::int64_t r = cube_radius(shell);
    std::vector<Mode> out;
    for (std::int64_t x = -r; x <= r; ++x)
        for (std::int64_t y = -r; y <= r; ++y)
            for (std::int64_t z = -r; z <= r; ++z)
                if (x * x + y * y + z * z <= shell) out.push_back({x, y, z});
    return out;
}

std::int64_t count_ball(std::int64_t shell) { return static_cast<std::int64_t>(cube_ball(shell).size()); }

std::int64_t sum_of_three_squares(std::int64_t s)
{
    std::int64_t n = 0;
    for (const auto& m : cube_ball(s))
        if (m.norm2() == s) ++n;
    return n;
}

std::int64_t shell_count(const FermiSystem& system, double eta)
{
    // e(k) grows like |k|^2, so modes with e <= eta lie inside (mu + eta)/c.
    const auto limit = static_cast<std::int64_t>(std::ceil((system.mu() + eta) / system.kinetic_unit())) + 1;
    std::int64_t n = 0;
    for (const auto& k : cube_ball(limit))
        if (system.dispersion(k) <= eta) ++n;
    return n;
}

double hf_energy(const FermiSystem& system, const PotentialSpec& v)
{
    const auto ball = cube_ball(system.shell());
    const double n = static_cast<double>(ball.size());
    CompensatedSum kinetic, exchange;
    for (const auto& k : ball) {
        kinetic += system.kinetic(k);
        for (const auto& kp : ball) exchange += v(k - kp);
    }
    return kinetic.value() + n * v(Mode{}) / 2.0 - exchange.value() / (2.0 * n);
}

double i_mu(const FermiSystem& system, const Mode& p)
{
    CompensatedSum s;
    for (const auto& k : cube_ball(system.shell()))
        if (!in_ball(system, k + p)) s += 1.0 / (system.dispersion(k + p) + system.dispersion(k));
    return s.value() / static_cast<double>(system.particle_number());
}

SecondOrderSums second_order(const FermiSystem& system, const PotentialSpec& v,
                             std::optional<std::int64_t> outer_shell, int power)
{
    const auto ball = cube_ball(system.shell());
    const double n = static_cast<double>(ball.size());
    CompensatedSum direct, exchange;
    for (const auto& [p, vp] : v.entries()) {
        for (const auto& k : ball) {
            if (!excited(system, k + p, outer_shell)) continue;
            const double ek = system.dispersion(k + p) + system.dispersion(k);
            for (const auto& kp : ball) {
                if (!excited(system, kp - p, outer_shell)) continue;
                const double e = ek + system.dispersion(kp - p) + system.dispersion(kp);
                const double w = std::pow(e, -power);
                direct += vp * vp * w;
                exchange += vp * v(p - kp + k) * w;
            }
        }
    }
    return {direct.value() / (2.0 * n * n), exchange.value() / (2.0 * n * n)};
}

} // namespace fermicorr::reference
