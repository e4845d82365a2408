#include "fermicorr/lattice.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/reference.hpp"
#include "fermicorr/summation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

using namespace fermicorr;
using lattice::FermiSystem;
using lattice::Mode;

TEST_CASE("enumerate_ball small shells")
{
    CHECK(lattice::enumerate_ball(0) == std::vector<Mode>{{0, 0, 0}});
    CHECK(lattice::enumerate_ball(1).size() == 7);
    CHECK(lattice::enumerate_ball(2).size() == 19);
    const auto b = lattice::enumerate_ball(30);
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(b == reference::cube_ball(30));
    CHECK_THROWS_AS(lattice::enumerate_ball(400, 1000), CapacityError);
}

TEST_CASE("count_ball agrees with cube scan")
{
    CHECK(lattice::count_ball(0) == 1);
    CHECK(lattice::count_ball(2) == 19);
    CHECK(lattice::count_ball(100) == 4169); // frozen by tests/oracles/frozen_values.py
    const auto table = lattice::count_ball_table(1000);
    for (std::int64_t s = 1; s <= 1000; ++s) {
        REQUIRE(table[s] >= table[s - 1]);
        if (s % 37 == 0 || s < 40) CHECK(table[s] - table[s - 1] == reference::sum_of_three_squares(s));
    }
    CHECK(table[729] == lattice::count_ball(729));
}

TEST_CASE("ball has the cubic symmetry")
{
    const auto b = lattice::enumerate_ball(50);
    const std::set<Mode> set(b.begin(), b.end());
    for (const auto& m : b) {
        const std::int64_t c[3] = {m.x, m.y, m.z};
        int perm[3] = {0, 1, 2};
        do {
            for (int s = 0; s < 8; ++s) {
                const Mode t{(s & 1 ? -1 : 1) * c[perm[0]], (s & 2 ? -1 : 1) * c[perm[1]], (s & 4 ? -1 : 1) * c[perm[2]]};
                REQUIRE(set.count(t) == 1);
            }
        } while (std::next_permutation(perm, perm + 3));
    }
}

TEST_CASE("FermiSystem constructors")
{
    const auto s = FermiSystem::from_shell(100);
    CHECK(s.particle_number() == 4169);
    CHECK(s.fermi_radius2() == doctest::Approx(100.5));
    CHECK(s.mu() == doctest::Approx(s.kinetic_unit() * 100.5).epsilon(1e-14));
    const auto e = FermiSystem::from_epsilon(s.epsilon());
    CHECK(e.shell() == 100);
    CHECK(lattice::normalized_mu() == doctest::Approx(4 * std::numbers::pi * std::numbers::pi * std::cbrt(std::pow(3 / (4 * std::numbers::pi), 2.0))));
    // (4 pi / 3)(mu / 4 pi^2)^{3/2} = 1
    CHECK(4 * std::numbers::pi / 3 * std::pow(lattice::normalized_mu() / (4 * std::numbers::pi * std::numbers::pi), 1.5) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(FermiSystem::from_shell(5, 1.0), DomainError);
    CHECK_THROWS_AS(FermiSystem::from_epsilon(-1.0), DomainError);
    for (const auto& k : lattice::enumerate_ball(200))
        if (!s.contains(k)) CHECK(s.dispersion(k) > 0);
}

TEST_CASE("gauss_error")
{
    const double r = 0.9;
    CHECK(lattice::gauss_error(r) == doctest::Approx(1 - 4 * std::numbers::pi / 3 * r * r * r));
    CHECK(lattice::gauss_error(10.0) == doctest::Approx(4169 - 4 * std::numbers::pi / 3 * 1000));
}

TEST_CASE("shell_count")
{
    const auto s = FermiSystem::from_shell(1);
    CHECK(lattice::shell_count(s, s.mu()).count >= 7);
    for (double f : {0.1, 0.45, 0.9, 1.7})
        CHECK(lattice::shell_count(s, f * s.mu()).count == reference::shell_count(s, f * s.mu()));
    // Fermi level on the |n|^2 = 1 shell: half the smallest gap sees only those 6 modes.
    const auto on = FermiSystem::from_shell(1, 0.0);
    const double gap = on.kinetic_unit() * 1.0;
    const auto c = lattice::shell_count(on, gap / 2);
    CHECK(c.count == 6);
    CHECK(c.fraction == doctest::Approx(6.0 / 7.0));
    for (std::int64_t sh : {10, 50, 97}) {
        const auto sys = FermiSystem::from_shell(sh, 0.3);
        for (double eta : {0.01, 0.3, 2.0, 7.5})
            CHECK(lattice::shell_count(sys, eta).count == reference::shell_count(sys, eta));
    }
}

TEST_CASE("transfer enumeration")
{
    const auto s = FermiSystem::from_shell(20);
    for (const Mode p : {Mode{1, 0, 0}, Mode{2, -1, 3}, Mode{0, 0, 9}, Mode{1, 1, 1}}) {
        std::vector<Mode> visited;
        lattice::for_each_transfer(s, p, std::nullopt, [&](const Mode& k) { visited.push_back(k); });
        std::vector<Mode> expect;
        for (const auto& k : reference::cube_ball(20))
            if (!s.contains(k + p)) expect.push_back(k);
        CHECK(visited == expect);

        std::vector<Mode> bounded;
        lattice::for_each_transfer(s, p, 30, [&](const Mode& k) { bounded.push_back(k); });
        std::vector<Mode> expect_bounded;
        for (const auto& k : expect)
            if ((k + p).norm2() <= 30) expect_bounded.push_back(k);
        CHECK(bounded == expect_bounded);

        std::int64_t total = 0;
        for (const auto& [dot, count] : lattice::transfer_dot_counts(s, p)) {
            CHECK(p.norm2() + 2 * dot > 0);
            total += count;
        }
        CHECK(total == static_cast<std::int64_t>(expect.size()));
    }
}

TEST_CASE("i_mu frozen values and brute force")
{
    CHECK(lattice::i_mu(FermiSystem::from_shell(1), {1, 0, 0}) == doctest::Approx(0.061119714856647765).epsilon(1e-13));
    CHECK(lattice::i_mu(FermiSystem::from_shell(5), {2, 1, 0}) == doctest::Approx(0.059085422445257045).epsilon(1e-13));
    CHECK(lattice::i_mu(FermiSystem::from_shell(2), {5, 0, 0}) == doctest::Approx(0.0072419851071709521).epsilon(1e-13));
    CHECK(lattice::i_mu(FermiSystem::from_shell(9), {0, 0, 0}) == 0.0);
    for (std::int64_t sh : {1, 9, 36}) {
        const auto s = FermiSystem::from_shell(sh);
        for (const auto& p : lattice::cubic_orbit_representatives(30)) {
            const double a = lattice::i_mu(s, p);
            CHECK(a == doctest::Approx(reference::i_mu(s, p)).epsilon(1e-12));
            CHECK(a == doctest::Approx(lattice::i_mu(s, -p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("i_mu for |p|^2 > 4S sees the whole ball")
{
    const auto s = FermiSystem::from_shell(4);
    const Mode p{5, 0, 0};
    CompensatedSum sum;
    for (const auto& k : s.ball()) sum += 1.0 / (s.kinetic_unit() * static_cast<double>(p.norm2() + 2 * k.dot(p)));
    CHECK(lattice::i_mu(s, p) == doctest::Approx(sum.value() / static_cast<double>(s.particle_number())).epsilon(1e-13));
}

TEST_CASE("cubic orbit representatives")
{
    const auto reps = lattice::cubic_orbit_representatives(3);
    CHECK(reps == std::vector<Mode>{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
}

TEST_CASE("results do not depend on the thread count")
{
    const auto s = FermiSystem::from_shell(400);
    setenv("FERMI_CORR_THREADS", "1", 1);
    const double one = lattice::i_mu(s, {2, 1, 0});
    setenv("FERMI_CORR_THREADS", "4", 1);
    const double four = lattice::i_mu(s, {2, 1, 0});
    unsetenv("FERMI_CORR_THREADS");
    CHECK(one == four);
}

TEST_CASE("compensated sum")
{
    CompensatedSum s;
    s += 1.0;
    s += 1e100;
    s += 1.0;
    s += -1e100;
    CHECK(s.value() == 2.0);
    const double total = ordered_sum(1000, 64, [](std::size_t i, CompensatedSum& acc) { acc += 0.1 * static_cast<double>(i); });
    CHECK(total == doctest::Approx(0.1 * 999 * 1000 / 2));
}
