#include "fermicorr/asymptotics.hpp"
#include "fermicorr/error.hpp"
#include "fermicorr/perturbation.hpp"
#include "fermicorr/reference.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace fermicorr;
using namespace fermicorr::perturbation;
using lattice::FermiSystem;
using lattice::Mode;

namespace {

// Values frozen by tests/oracles/frozen_values.py (independent brute force).
constexpr double kHfStar = 60.984950678893696;
constexpr double kHfZero = 60.770664964607981;
constexpr double kDirect = 0.00020485179155250096;
constexpr double kExchange = 4.0298713092295234e-05;
constexpr double kDirect2 = 9.0074849955287371e-06;
constexpr double kExchange2 = 1.9893831891965314e-06;
constexpr double kDirectOuter2 = 0.00016119485236918094;
constexpr double kDirectS2 = 0.003061154480704484;
constexpr double kExchangeS2 = 0.00025640195743453081;

PotentialSpec random_potential(std::mt19937_64& rng, std::int64_t radius2)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PotentialSpec::Entry> e;
    for (const auto& p : lattice::enumerate_ball(radius2)) {
        if (-p < p || u(rng) > 0.4) continue;
        const double value = u(rng);
        e.emplace_back(p, value);
        if (!p.is_zero()) e.emplace_back(-p, value);
    }
    if (e.empty()) e = {{{0, 1, 0}, 0.2}, {{0, -1, 0}, 0.2}};
    return PotentialSpec::from_entries(e);
}

} // namespace

TEST_CASE("PotentialSpec validation")
{
    CHECK_THROWS_AS(PotentialSpec::from_entries({{{1, 0, 0}, -1.0}, {{-1, 0, 0}, -1.0}}), DomainError);
    CHECK_THROWS_AS(PotentialSpec::from_entries({{{1, 0, 0}, 1.0}}), DomainError);
    CHECK_THROWS_AS(PotentialSpec::from_entries({{{1, 0, 0}, 1.0}, {{-1, 0, 0}, 2.0}}), DomainError);
    CHECK_THROWS_AS(PotentialSpec::from_entries({{{0, 0, 0}, NAN}}), DomainError);
    std::vector<std::string> warnings;
    const auto v = PotentialSpec::from_entries({{{1, 2, 0}, 0.5}}, true, &warnings);
    CHECK(v.size() == 2);
    CHECK(v({-1, -2, 0}) == 0.5);
    CHECK(warnings.size() == 1);
    CHECK(v.l1_norm() == 1.0);
    CHECK(PotentialSpec::shell(1, 1.0).size() == 6);
    CHECK(PotentialSpec::ball(1, 1.0).size() == 7);
    CHECK(PotentialSpec::pair({0, 0, 0}, 2.0).size() == 1);
}

TEST_CASE("potential table parsing")
{
    std::istringstream ok("# comment\n1 0 0 0.25\n\n0 0 0 1.5  # self\n");
    std::vector<std::string> warnings;
    const auto v = parse_potential_table(ok, "t.pot", &warnings);
    CHECK(v.size() == 3);
    CHECK(v({-1, 0, 0}) == 0.25);
    CHECK(warnings.size() == 1);

    std::istringstream bad("1 0 0 0.25\n1 0 x 0.3\n");
    try {
        parse_potential_table(bad, "bad.pot");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.pot:2") != std::string::npos);
    }
    std::istringstream neg("1 0 0 -1\n");
    CHECK_THROWS_AS(parse_potential_table(neg, "neg.pot"), ConfigError);

    CHECK(parse_potential("single:p=(1,0,0):g=0.1").size() == 2);
    CHECK(parse_potential("shell:r2=2:g=0.1").size() == 12);
    CHECK(parse_potential("ball:r2=1:g=0.1").size() == 7);
    CHECK(parse_potential("zero").empty());
    CHECK_THROWS_AS(parse_potential("single:p=(1,0):g=1"), ConfigError);
    CHECK_THROWS_AS(parse_potential("/nonexistent/file.pot"), ConfigError);
}

TEST_CASE("hf_energy")
{
    const auto s = FermiSystem::from_shell(1);
    CHECK(hf_energy(s, {}) == doctest::Approx(kHfZero).epsilon(1e-14));
    CHECK(hf_energy(s, PotentialSpec::ball(1, 0.1)) == doctest::Approx(kHfStar).epsilon(1e-14));
    CHECK(hf_energy(s, {}) == sea_kinetic_energy(s));
    const double g = 0.7;
    const double n = static_cast<double>(s.particle_number());
    CHECK(hf_energy(s, PotentialSpec::pair({0, 0, 0}, g)) == doctest::Approx(kHfZero + n * g / 2 - g / 2).epsilon(1e-14));
    std::mt19937_64 rng(7);
    for (std::int64_t sh : {2, 5, 16}) {
        const auto sys = FermiSystem::from_shell(sh);
        const auto v = random_potential(rng, 6);
        CHECK(hf_energy(sys, v) == doctest::Approx(reference::hf_energy(sys, v)).epsilon(1e-13));
    }
}

TEST_CASE("second-order sums against frozen brute force")
{
    const auto s = FermiSystem::from_shell(1);
    const auto v = PotentialSpec::pair({1, 0, 0}, 0.1);
    CHECK(c2_direct(s, v) == doctest::Approx(kDirect).epsilon(1e-13));
    CHECK(c2_exchange(s, v) == doctest::Approx(kExchange).epsilon(1e-13));
    CHECK(c2_exchange(s, v, {}, Method::BruteForce) == doctest::Approx(kExchange).epsilon(1e-13));
    CHECK(c2_direct(s, v, {}, 2) == doctest::Approx(kDirect2).epsilon(1e-13));
    CHECK(c2_exchange(s, v, {}, Method::Support, 2) == doctest::Approx(kExchange2).epsilon(1e-13));
    SumOptions o;
    o.outer_shell = 2;
    CHECK(c2_direct(s, v, o) == doctest::Approx(kDirectOuter2).epsilon(1e-13));
    CHECK(c2_exchange(s, v, o) == doctest::Approx(kExchange).epsilon(1e-13));

    const auto s2 = FermiSystem::from_shell(2);
    const auto two = PotentialSpec::from_entries(
        {{{1, 1, 0}, 0.25}, {{-1, -1, 0}, 0.25}, {{1, 0, 0}, 0.5}, {{-1, 0, 0}, 0.5}});
    CHECK(c2_direct(s2, two) == doctest::Approx(kDirectS2).epsilon(1e-13));
    CHECK(c2_exchange(s2, two) == doctest::Approx(kExchangeS2).epsilon(1e-13));

    CHECK(c2_direct(s, {}) == 0.0);
    CHECK(c2_total(s, {}).c2 == 0.0);
    CHECK(trial_normalization(s, {}).m == 1.0);
}

TEST_CASE("histogram and support methods equal the direct double sum")
{
    std::mt19937_64 rng(11);
    for (std::int64_t sh : {1, 3, 9, 16, 27}) {
        const auto s = FermiSystem::from_shell(sh, 0.37);
        const auto v = random_potential(rng, 5);
        for (std::optional<std::int64_t> outer : {std::optional<std::int64_t>{}, std::optional<std::int64_t>{sh + 4}}) {
            SumOptions o;
            o.outer_shell = outer;
            for (int power : {1, 2}) {
                const auto ref = reference::second_order(s, v, outer, power);
                CHECK(c2_direct(s, v, o, power) == doctest::Approx(ref.direct).epsilon(1e-12));
                CHECK(c2_exchange(s, v, o, Method::Support, power) == doctest::Approx(ref.exchange).epsilon(1e-12));
                CHECK(c2_exchange(s, v, o, Method::BruteForce, power) == doctest::Approx(ref.exchange).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("sign, consistency and homogeneity of c2")
{
    std::mt19937_64 rng(3);
    const auto s = FermiSystem::from_shell(9);
    for (int i = 0; i < 10; ++i) {
        const auto v = random_potential(rng, 4);
        const auto r = c2_total(s, v);
        CHECK(r.direct >= r.exchange);
        CHECK(r.c2 <= 0.0);
        CHECK(r.c2 == doctest::Approx(-fhf_vacuum(s, v)).epsilon(1e-12));
        CHECK(c2_total(s, v.scaled(2.5)).c2 == doctest::Approx(6.25 * r.c2).epsilon(1e-12));
        const auto t = trial_normalization(s, v);
        CHECK(t.j1 + t.j2 >= 0.0);
        CHECK(t.m >= 1.0);
    }
}

TEST_CASE("budget ceiling")
{
    const auto s = FermiSystem::from_shell(100);
    SumOptions o;
    o.brute_force_ceiling = 1000;
    const auto v = PotentialSpec::shell(1, 1.0);
    CHECK_THROWS_AS(c2_exchange(s, v, o, Method::BruteForce), BudgetError);
    CHECK_THROWS_AS(fhf_vacuum(s, v, o), BudgetError);
    CHECK_NOTHROW(c2_exchange(s, v, o, Method::Support));
}

TEST_CASE("normalization is quadratic in g")
{
    const auto s = FermiSystem::from_shell(5);
    const auto v = PotentialSpec::pair({1, 1, 0}, 1.0);
    std::vector<double> lg, ld;
    for (double g : {0.01, 0.02, 0.04}) {
        lg.push_back(std::log(g));
        ld.push_back(std::log(trial_normalization(s, v.scaled(g)).m - 1.0));
    }
    CHECK((ld[2] - ld[0]) / (lg[2] - lg[0]) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("asymptotic constant and integrals")
{
    CHECK(correlation_constant() == doctest::Approx(std::numbers::pi / 2 * (1 - std::log(2.0))).epsilon(1e-15));
    CHECK(correlation_constant() == doctest::Approx(0.482003).epsilon(1e-6));
    CHECK(asymptotic_c2({}, 0.01) == 0.0);
    const auto v = PotentialSpec::shell(1, 1.0);
    const double e = 0.02;
    const double cube = std::pow(2 * std::numbers::pi, 3);
    CHECK(asymptotic_c2(v, e) == doctest::Approx(-e * cube * correlation_constant() * 6 * 2 * std::numbers::pi));
    CHECK(asymptotic_c2_lattice(v, e) == doctest::Approx(asymptotic_c2(v, e) / (cube * cube)));

    CHECK(xy_integral(0.0) == doctest::Approx(2.0 / 3.0 * (1 - std::numbers::ln2)).epsilon(1e-14));
    for (double a : {0.0, 0.3, 1.0, 3.9, 12.0}) {
        const double g = xy_integral(a, XyScheme::NestedGaussKronrod);
        CHECK(std::abs(g - xy_integral(a, XyScheme::Duffy)) < 1e-12);
        if (a <= 4) CHECK(std::abs(g - xy_integral(a, XyScheme::ClosedForm)) < 1e-12);
    }
    CHECK(std::abs(xy_integral(1.0) - 0.10961114107776254213) < 1e-14);
    CHECK(xy_integral(1e4) * 4e4 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(xy_integral(-1.0), DomainError);

    const auto s = FermiSystem::from_shell(100);
    for (const Mode p : {Mode{1, 0, 0}, Mode{3, 2, 1}, Mode{10, 0, 0}})
        CHECK(limiting_imu_integral(s, p) == doctest::Approx(limiting_imu_integral_exact(s, p)).epsilon(1e-12));
    CHECK_THROWS_AS(limiting_imu_integral(s, {0, 0, 0}), DomainError);
    // eps |p| -> infinity drives the integral to zero
    CHECK(limiting_imu_integral(FermiSystem::from_shell(0), {1000, 0, 0}) < 1e-2);
}

TEST_CASE("c2 is invariant under support enumeration order")
{
    const auto s = FermiSystem::from_shell(16);
    std::vector<PotentialSpec::Entry> e{{{1, 0, 0}, 0.3}, {{-1, 0, 0}, 0.3}, {{1, 1, 0}, 0.2}, {{-1, -1, 0}, 0.2}};
    const auto a = c2_total(s, PotentialSpec::from_entries(e));
    std::reverse(e.begin(), e.end());
    const auto b = c2_total(s, PotentialSpec::from_entries(e));
    CHECK(a.c2 == b.c2);
    CHECK(a.direct == b.direct);
}
