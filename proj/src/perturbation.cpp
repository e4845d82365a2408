#include "fermicorr/perturbation.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/summation.hpp"

#include <cmath>
#include <string>

namespace fermicorr::perturbation {

using lattice::isqrt;

namespace {

double inverse_power(double x, int power)
{
    return power == 1 ? 1.0 / x : 1.0 / (x * x);
}

void check_power(int power)
{
    if (power != 1 && power != 2) throw DomainError("denominator power must be 1 or 2");
}

std::vector<Mode> transfer_set(const FermiSystem& system, const Mode& p, std::optional<std::int64_t> outer)
{
    std::vector<Mode> out;
    lattice::for_each_transfer(system, p, outer, [&](const Mode& k) { out.push_back(k); });
    return out;
}

void check_ceiling(const FermiSystem& system, const SumOptions& opts, const char* what)
{
    if (static_cast<std::size_t>(system.particle_number()) > opts.brute_force_ceiling)
        throw BudgetError(std::string(what) + ": N = " + std::to_string(system.particle_number()) +
                          " exceeds brute-force ceiling " + std::to_string(opts.brute_force_ceiling));
}

// Sum over the nonzero support momenta, one term per p, merged in support order.
template <class Term>
double sum_over_support(const PotentialSpec& v, Term term)
{
    const auto& entries = v.entries();
    std::vector<double> parts(entries.size(), 0.0);
    parallel_for(entries.size(), [&](std::size_t i) {
        if (!entries[i].first.is_zero()) parts[i] = term(entries[i].first, entries[i].second);
    });
    CompensatedSum total;
    for (double x : parts) total += x;
    return total.value();
}

double pair_prefactor(const FermiSystem& system)
{
    const double n = static_cast<double>(system.particle_number());
    return 1.0 / (2.0 * n * n);
}

} // namespace

const char* to_string(Method m) noexcept
{
    switch (m) {
    case Method::Histogram: return "histogram";
    case Method::Support: return "support";
    case Method::BruteForce: return "brute-force";
    }
    return "?";
}

EnergyHistogram::EnergyHistogram(const FermiSystem& system, const Mode& p, std::optional<std::int64_t> outer_shell)
    : p_(p), bins_(lattice::transfer_dot_counts(system, p, outer_shell))
{
    for (const auto& [dot, count] : bins_) {
        if (p.norm2() + 2 * dot <= 0)
            throw Error("nonpositive pair denominator in histogram for p = " + lattice::to_string(p));
        total_ += count;
    }
}

double histogram_convolution(const FermiSystem& system, const EnergyHistogram& plus,
                             const EnergyHistogram& minus, int power)
{
    check_power(power);
    const double c = system.kinetic_unit();
    CompensatedSum s;
    for (std::size_t a = 0; a < plus.bins().size(); ++a) {
        const std::int64_t da = plus.denominator(a);
        const double na = static_cast<double>(plus.bins()[a].second);
        CompensatedSum row;
        for (std::size_t b = 0; b < minus.bins().size(); ++b) {
            const double e = c * static_cast<double>(da + minus.denominator(b));
            row += static_cast<double>(minus.bins()[b].second) * inverse_power(e, power);
        }
        s += na * row.value();
    }
    return s.value();
}

double sea_kinetic_energy(const FermiSystem& system)
{
    const std::int64_t shell = system.shell();
    const std::int64_t r = isqrt(shell);
    std::int64_t total = 0;
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t ry = isqrt(shell - x * x);
        for (std::int64_t y = -ry; y <= ry; ++y) {
            const std::int64_t t = isqrt(shell - x * x - y * y);
            // sum_{z=-t}^{t} (x^2 + y^2 + z^2)
            total += (2 * t + 1) * (x * x + y * y) + t * (t + 1) * (2 * t + 1) / 3;
        }
    }
    return system.kinetic_unit() * static_cast<double>(total);
}

double hf_energy(const FermiSystem& system, const PotentialSpec& v)
{
    const std::int64_t n = system.particle_number();
    const double nd = static_cast<double>(n);
    // sum_{k,k' in B} v(k-k') = sum_p v(p) #{k in B : k-p in B}
    //                         = sum_p v(p) (N - #{k in B : k-p not in B})
    CompensatedSum exchange;
    for (const auto& [p, value] : v.entries()) {
        std::int64_t pairs = n;
        if (!p.is_zero())
            for (const auto& [dot, count] : lattice::transfer_dot_counts(system, -p)) pairs -= count;
        exchange += value * static_cast<double>(pairs);
    }
    return sea_kinetic_energy(system) + nd * v(Mode{}) / 2.0 - exchange.value() / (2.0 * nd);
}

double c2_direct(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts, int power)
{
    check_power(power);
    const double sum = sum_over_support(v, [&](const Mode& p, double value) {
        const EnergyHistogram plus(system, p, opts.outer_shell);
        const EnergyHistogram minus(system, -p, opts.outer_shell);
        return value * value * histogram_convolution(system, plus, minus, power);
    });
    return pair_prefactor(system) * sum;
}

double c2_exchange(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts, Method method,
                   int power)
{
    check_power(power);
    const double c = system.kinetic_unit();
    const auto outer = opts.outer_shell;
    double sum = 0.0;
    if (method == Method::Support) {
        sum = sum_over_support(v, [&](const Mode& p, double vp) {
            const auto ks = transfer_set(system, p, outer);
            CompensatedSum s;
            for (const auto& k : ks) {
                const std::int64_t ek = p.norm2() + 2 * k.dot(p);
                for (const auto& [q, vq] : v.entries()) {
                    // q = p - k' + k, so k' = k + p - q and k' - p = k - q
                    const Mode kp = k + p - q;
                    const Mode hole = k - q;
                    if (!system.contains(kp) || system.contains(hole)) continue;
                    if (outer && hole.norm2() > *outer) continue;
                    const std::int64_t ekp = p.norm2() - 2 * kp.dot(p);
                    s += vp * vq * inverse_power(c * static_cast<double>(ek + ekp), power);
                }
            }
            return s.value();
        });
    } else if (method == Method::BruteForce) {
        check_ceiling(system, opts, "c2_exchange");
        sum = sum_over_support(v, [&](const Mode& p, double vp) {
            const auto ks = transfer_set(system, p, outer);
            const auto kps = transfer_set(system, -p, outer);
            CompensatedSum s;
            for (const auto& k : ks) {
                const std::int64_t ek = p.norm2() + 2 * k.dot(p);
                for (const auto& kp : kps) {
                    const double vq = v(p - kp + k);
                    if (vq == 0.0) continue;
                    const std::int64_t ekp = p.norm2() - 2 * kp.dot(p);
                    s += vp * vq * inverse_power(c * static_cast<double>(ek + ekp), power);
                }
            }
            return s.value();
        });
    } else {
        throw DomainError("exchange sum has no histogram method");
    }
    return pair_prefactor(system) * sum;
}

SecondOrderResult c2_total(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts,
                           Method exchange_method)
{
    SecondOrderResult r;
    r.direct = c2_direct(system, v, opts);
    r.exchange = c2_exchange(system, v, opts, exchange_method);
    r.c2 = -r.direct + r.exchange;
    r.exchange_method = exchange_method;
    return r;
}

double fhf_vacuum(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts)
{
    check_ceiling(system, opts, "fhf_vacuum");
    const double c = system.kinetic_unit();
    const double sum = sum_over_support(v, [&](const Mode& p, double vp) {
        const auto ks = transfer_set(system, p, opts.outer_shell);
        const auto kps = transfer_set(system, -p, opts.outer_shell);
        CompensatedSum s;
        for (const auto& k : ks) {
            const std::int64_t ek = p.norm2() + 2 * k.dot(p);
            for (const auto& kp : kps) {
                const double e = c * static_cast<double>(ek + p.norm2() - 2 * kp.dot(p));
                s += vp * (vp - v(p - kp + k)) / e;
            }
        }
        return s.value();
    });
    return pair_prefactor(system) * sum;
}

TrialNormalization trial_normalization(const FermiSystem& system, const PotentialSpec& v, const SumOptions& opts,
                                       Method exchange_method)
{
    TrialNormalization t;
    t.j1 = c2_direct(system, v, opts, 2);
    t.j2 = -c2_exchange(system, v, opts, exchange_method, 2);
    t.m = std::sqrt(1.0 + t.j1 + t.j2);
    return t;
}

} // namespace fermicorr::perturbation
