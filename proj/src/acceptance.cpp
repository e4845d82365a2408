#include "fermicorr/acceptance.hpp"

#include "fermicorr/asymptotics.hpp"
#include "fermicorr/error.hpp"
#include "fermicorr/fock.hpp"
#include "fermicorr/perturbation.hpp"
#include "fermicorr/reference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

namespace fermicorr::acceptance {

namespace {

using lattice::FermiSystem;
using lattice::Mode;
using perturbation::PotentialSpec;

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::vector<double> kCouplings{0.02, 0.04, 0.08, 0.12, 0.16, 0.2};

// Shared by AC-2 and AC-9: B = ball(1), M = ball(2), v = g at +-(1,0,0).
struct SmallSystemPoint {
    double g = 0.0;
    double e_n = 0.0;
    double residual = 0.0; // relative to the norm estimate
    double e_hf = 0.0;
    double c2_trunc = 0.0;
    double fhf_trunc = 0.0;
    double trial_energy = 0.0;
    double rdm = 0.0;
    double trial_norm_defect = 0.0;
};

const std::vector<SmallSystemPoint>& small_system_sweep()
{
    static std::optional<std::vector<SmallSystemPoint>> cache;
    if (cache) return *cache;
    const auto system = FermiSystem::from_shell(1);
    const fock::ModeSet modes(system, 2);
    const auto sector = fock::Basis::sector(modes.size(), static_cast<std::size_t>(system.particle_number()));
    perturbation::SumOptions trunc;
    trunc.outer_shell = 2;
    fock::EigenOptions eig;
    eig.solver = fock::Solver::Lanczos;
    std::vector<SmallSystemPoint> out;
    for (double g : kCouplings) {
        const auto v = PotentialSpec::pair({1, 0, 0}, g);
        const auto h = fock::assemble_hamiltonian(system, modes, v, sector);
        const auto gs = fock::ground_state(h, eig);
        const auto trial = fock::trial_state(system, modes, v);
        const auto norm = perturbation::trial_normalization(system, v, trunc);
        SmallSystemPoint pt;
        pt.g = g;
        pt.e_n = gs.energy;
        pt.residual = gs.residual / gs.norm_estimate;
        pt.e_hf = perturbation::hf_energy(system, v);
        pt.c2_trunc = perturbation::c2_total(system, v, trunc).c2;
        pt.fhf_trunc = perturbation::fhf_vacuum(system, v, trunc);
        pt.trial_energy = h.expectation(trial.psi);
        pt.rdm = fock::one_rdm_distance(gs.vector, sector, modes).trace;
        pt.trial_norm_defect = rel(trial.normalization, norm.m);
        out.push_back(pt);
    }
    cache = std::move(out);
    return *cache;
}

Result ac1()
{
    Result r{"AC-1", "operator identity R*HR = E_HF + H0 + X + Q", false, 0, "<= 1e-10", 0, 5, {}};
    const auto system = FermiSystem::from_shell(1);
    const std::vector<std::pair<std::string, PotentialSpec>> pots{
        {"pair (1,0,0) g=0.3", PotentialSpec::pair({1, 0, 0}, 0.3)},
        {"ball r2<=1 g=0.2", PotentialSpec::ball(1, 0.2)},
        {"ball r2<=2 g=0.15", PotentialSpec::ball(2, 0.15)},
    };
    double sector = 0, full_ct = 0, blocks = 0, full_raw = std::numeric_limits<double>::infinity();
    const fock::ModeSet m7(system, 1);
    for (const auto& [name, v] : pots) {
        const auto rep = fock::verify_identity(system, m7, v, 12);
        sector = std::max(sector, rep.sector_defect);
        full_ct = std::max(full_ct, rep.full_defect_counterterm);
        full_raw = std::min(full_raw, rep.full_defect);
        blocks = std::max({blocks, rep.q_split_defect, rep.q1_defect});
    }
    r.measured = sector;
    r.details.push_back(fmt("M=ball(1), N=7 sector: max defect %.3e over %zu potentials", sector, pots.size()));
    r.details.push_back(fmt("M=ball(1) full Fock (dim 128) with (mu+v(0))(N_b-N_c): defect %.3e", full_ct));
    r.details.push_back(fmt("M=ball(1) full Fock without counterterm: defect %.3e (expected nonzero)", full_raw));

    // Conjugation R* a_k R = b_k + c*_k mode by mode, and unitarity.
    const auto full = fock::Basis::full(m7.size());
    const fock::ParticleHoleMap ph(m7);
    const Eigen::MatrixXd rm = ph.matrix(full, full);
    double conj = (rm.transpose() * rm - Eigen::MatrixXd::Identity(128, 128)).cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < m7.size(); ++i) {
        fock::OperatorSum a, target;
        a.add(1.0, {fock::annihilate(i)});
        target.add(1.0, {{i, m7.in_ball(i)}});
        const Eigen::MatrixXd lhs = rm.transpose() * fock::SparseOperator::assemble(a, full).to_dense() * rm;
        conj = std::max(conj, (lhs - fock::SparseOperator::assemble(target, full).to_dense()).cwiseAbs().maxCoeff());
    }
    r.details.push_back(fmt("R unitary and R* a_k R = b_k + c*_k on |M|=7: defect %.3e", conj));

    const fock::ModeSet m19(system, 2);
    const auto v19 = PotentialSpec::from_entries({{{0, 0, 0}, 0.1}, {{1, 0, 0}, 0.3}, {{-1, 0, 0}, 0.3},
                                                  {{1, 1, 0}, 0.2}, {{-1, -1, 0}, 0.2}});
    const auto rep19 = fock::verify_identity(system, m19, v19, 12);
    blocks = std::max({blocks, rep19.q_split_defect, rep19.q1_defect});
    r.details.push_back(fmt("M=ball(2), B=ball(1) sector (dim %zu): defect %.3e (<= 1e-9)", rep19.sector_dimension,
                            rep19.sector_defect));
    r.details.push_back(fmt("Q = Q1+Q2+Q3 and Q1 = (1/2N) sum v D*D + Q1a: defect %.3e (<= 1e-12)", blocks));
    r.pass = sector <= 1e-10 && full_ct <= 1e-10 && conj <= 1e-12 && rep19.sector_defect <= 1e-9 && blocks <= 1e-12;
    return r;
}

Result ac2()
{
    Result r{"AC-2", "second-order residual |E_N - E_HF - C2_trunc| = O(g^3)", false, 0, "slope >= 2.7, residual <= 1e-9",
             0, 600, {}};
    const auto& pts = small_system_sweep();
    std::vector<double> gs, res;
    double worst = 0;
    for (const auto& p : pts) {
        gs.push_back(p.g);
        res.push_back(std::abs(p.e_n - p.e_hf - p.c2_trunc));
        worst = std::max(worst, p.residual);
        r.details.push_back(fmt("g=%.2f E_N=%.15f E_HF=%.15f C2=%.6e |resid|=%.4e lanczos residual %.1e", p.g, p.e_n,
                                p.e_hf, p.c2_trunc, res.back(), p.residual));
    }
    r.measured = loglog_slope(gs, res);
    r.pass = r.measured >= 2.7 && worst <= 1e-9;

    // Independent solver on the zero-momentum block at the largest coupling.
    const auto system = FermiSystem::from_shell(1);
    const fock::ModeSet modes(system, 2);
    const auto block = fock::momentum_block(fock::Basis::sector(modes.size(), 7), modes, Mode{});
    if (block.dimension() <= fock::kDenseCrossover) {
        const auto h = fock::assemble_hamiltonian(system, modes, PotentialSpec::pair({1, 0, 0}, kCouplings.back()), block);
        fock::EigenOptions dense;
        dense.solver = fock::Solver::Dense;
        const double e = fock::ground_state(h, dense).energy;
        r.details.push_back(fmt("dense P=0 block (dim %zu) vs Lanczos full sector: |dE| = %.2e", block.dimension(),
                                std::abs(e - pts.back().e_n)));
    }
    return r;
}

Result ac3()
{
    Result r{"AC-3", "histogram c2_direct equals O(N^2) brute force", false, 0, "rel <= 1e-12", 0, 60, {}};
    std::vector<Mode> transfers;
    for (const auto& p : lattice::enumerate_ball(9))
        if (!p.is_zero()) transfers.push_back(p);
    double worst = 0;
    for (std::int64_t s : {1, 2, 5, 9, 16, 25, 36, 49, 64}) {
        const auto system = FermiSystem::from_shell(s);
        double w = 0;
        for (const auto& p : transfers) {
            const auto v = PotentialSpec::pair(p, 1.0);
            w = std::max(w, rel(perturbation::c2_direct(system, v), reference::second_order(system, v).direct));
        }
        r.details.push_back(fmt("S=%lld N=%lld: max rel diff %.2e over %zu transfers", static_cast<long long>(s),
                                static_cast<long long>(system.particle_number()), w, transfers.size()));
        worst = std::max(worst, w);
    }
    r.measured = worst;
    r.pass = worst <= 1e-12;
    return r;
}

Result ac4(const Options& opts)
{
    Result r{"AC-4", "c2_total / asymptotic_c2 -> 1 (v = 1 on |p|^2 = 1)", false, 0,
             "|ratio-1| <= 0.1 at S=25600, |ratio-1| nonincreasing over last 3", 0, 900, {}};
    const auto v = PotentialSpec::shell(1, 1.0);
    std::vector<double> literal, lattice_ratio;
    for (std::int64_t s : {100, 400, 1600, 6400, 25600}) {
        const auto system = FermiSystem::from_shell(s);
        const auto c2 = perturbation::c2_total(system, v);
        literal.push_back(c2.c2 / perturbation::asymptotic_c2(v, system.epsilon()));
        lattice_ratio.push_back(c2.c2 / perturbation::asymptotic_c2_lattice(v, system.epsilon()));
        std::string line = fmt("S=%lld N=%lld eps=%.6g direct=%.10e exchange=%.4e ratio=%.6e lattice-normalized=%.6f",
                               static_cast<long long>(s), static_cast<long long>(system.particle_number()),
                               system.epsilon(), c2.direct, c2.exchange, literal.back(), lattice_ratio.back());
        if (static_cast<std::size_t>(system.particle_number()) <= opts.brute_force_ceiling) {
            perturbation::SumOptions o;
            o.brute_force_ceiling = opts.brute_force_ceiling;
            const double bf = perturbation::c2_exchange(system, v, o, perturbation::Method::BruteForce);
            line += fmt(" (exchange brute force rel diff %.1e)", rel(bf, c2.exchange));
        }
        r.details.push_back(line);
    }
    auto verdict = [](const std::vector<double>& x) {
        const std::size_t n = x.size();
        const bool trend = std::abs(x[n - 1] - 1) <= std::abs(x[n - 2] - 1) && std::abs(x[n - 2] - 1) <= std::abs(x[n - 3] - 1);
        return std::abs(x[n - 1] - 1) <= 0.1 && trend;
    };
    r.measured = literal.back();
    r.pass = verdict(literal);
    r.details.push_back(fmt("diagnostic: with the (2 pi)^6 normalization factor removed the final ratio is %.6f (%s)",
                            lattice_ratio.back(), verdict(lattice_ratio) ? "would pass" : "would fail"));
    return r;
}

Result ac5()
{
    using perturbation::XyScheme;
    Result r{"AC-5", "xy_integral(0) = (2/3)(1 - log 2); two quadratures agree", false, 0, "<= 1e-8, schemes <= 1e-10", 0,
             1, {}};
    const double exact = 2.0 / 3.0 * (1.0 - std::numbers::ln2);
    r.measured = std::abs(perturbation::xy_integral(0.0) - exact);
    double agree = 0;
    for (double a : {0.0, 0.1, 1.0, 10.0}) {
        const double g = perturbation::xy_integral(a, XyScheme::NestedGaussKronrod);
        const double d = perturbation::xy_integral(a, XyScheme::Duffy);
        agree = std::max(agree, std::abs(g - d));
        r.details.push_back(fmt("a=%g nested GK %.16f Duffy %.16f", a, g, d));
    }
    r.details.push_back(fmt("max scheme disagreement %.2e", agree));
    r.pass = r.measured <= 1e-8 && agree <= 1e-10;
    return r;
}

// a, b >= 0 minimizing sum ((a x_i + b y_i) / f_i - 1)^2.
std::pair<double, double> nnls2(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& f)
{
    double xx = 0, xy = 0, yy = 0, xf = 0, yf = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double u = x[i] / f[i], w = y[i] / f[i];
        xx += u * u;
        xy += u * w;
        yy += w * w;
        xf += u;
        yf += w;
    }
    const double det = xx * yy - xy * xy;
    if (det > 0) {
        const double a = (xf * yy - yf * xy) / det, b = (yf * xx - xf * xy) / det;
        if (a >= 0 && b >= 0) return {a, b};
    }
    auto cost = [&](double a, double b) {
        double c = 0;
        for (std::size_t i = 0; i < f.size(); ++i) c += std::pow((a * x[i] + b * y[i]) / f[i] - 1, 2);
        return c;
    };
    const double a_only = xf / xx, b_only = yf / yy;
    return cost(a_only, 0) <= cost(0, b_only) ? std::pair{a_only, 0.0} : std::pair{0.0, b_only};
}

Result ac6()
{
    Result r{"AC-6", "shell fraction at eta = 1/N and Gauss-sphere exponent", false, 0,
             "fit residual <= 0.2, a,b >= 0, exponent <= 1.5", 0, 300, {}};
    const double beta = 9.0 / 16.0 - 0.05;
    std::vector<double> xs, ys, fs;
    for (std::int64_t s : {400, 1600, 6400, 25600}) {
        // Fermi level on the last shell: the worst case for the count.
        const auto system = FermiSystem::from_shell(s, 0.0);
        const double n = static_cast<double>(system.particle_number());
        const auto c = lattice::shell_count(system, 1.0 / n);
        xs.push_back(1.0 / n);
        ys.push_back(std::pow(n, -beta));
        fs.push_back(c.fraction);
        r.details.push_back(fmt("S=%lld N=%.0f count=%lld fraction=%.6e", static_cast<long long>(s), n,
                                static_cast<long long>(c.count), c.fraction));
    }
    const auto [a, b] = nnls2(xs, ys, fs);
    double resid = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) resid = std::max(resid, std::abs(a * xs[i] + b * ys[i] - fs[i]) / fs[i]);
    r.details.push_back(fmt("fit a=%.6g b=%.6g max relative residual %.3e", a, b, resid));

    // Windowed maxima of |E3| over R in [10, 200], at both ends of each
    // integer interval of R^2 (count constant on [sqrt(s), sqrt(s+1))).
    const auto table = lattice::count_ball_table(40000);
    const int windows = 24;
    std::vector<double> rs, es;
    for (int w = 0; w < windows; ++w) {
        const double lo = 10.0 * std::pow(20.0, static_cast<double>(w) / windows);
        const double hi = 10.0 * std::pow(20.0, static_cast<double>(w + 1) / windows);
        double best = 0, best_r = lo;
        for (auto s = static_cast<std::int64_t>(std::ceil(lo * lo)); s < static_cast<std::int64_t>(hi * hi); ++s) {
            const double c = static_cast<double>(table[static_cast<std::size_t>(s)]);
            for (double r2 : {static_cast<double>(s), static_cast<double>(s + 1)}) {
                const double e = std::abs(c - 4.0 / 3.0 * std::numbers::pi * std::pow(r2, 1.5));
                if (e > best) {
                    best = e;
                    best_r = std::sqrt(r2);
                }
            }
        }
        rs.push_back(best_r);
        es.push_back(best);
    }
    const double exponent = loglog_slope(rs, es);
    r.details.push_back(fmt("Gauss error exponent %.4f (printed bound 21/16 = 1.3125)", exponent));
    r.measured = resid;
    r.pass = resid <= 0.2 && a >= 0 && b >= 0 && exponent <= 1.5;
    return r;
}

Result ac7()
{
    Result r{"AC-7", "i_mu bounded by twice the limiting integral; brute-force agreement", false, 0,
             "max i_mu <= 2 max limit, brute force rel <= 1e-12", 0, 300, {}};
    const auto reps = lattice::cubic_orbit_representatives(100);
    double max_imu = 0, max_limit = 0;
    for (std::int64_t s : {100, 400, 2500, 10000}) {
        const auto system = FermiSystem::from_shell(s);
        double mi = 0, ml = 0, worst_lattice = 0;
        for (const auto& p : reps) {
            const double i = lattice::i_mu(system, p);
            mi = std::max(mi, i);
            ml = std::max(ml, perturbation::limiting_imu_integral(system, p));
            if (s == 10000 && p.norm2() <= 4)
                worst_lattice =
                    std::max(worst_lattice, std::abs(i / perturbation::limiting_imu_integral_lattice(system, p) - 1));
        }
        max_imu = std::max(max_imu, mi);
        max_limit = std::max(max_limit, ml);
        std::string line = fmt("S=%lld: max i_mu %.6f, max limiting integral %.4f", static_cast<long long>(s), mi, ml);
        if (s == 10000) line += fmt("; |p|^2<=4 vs limit/(2 pi)^3: max rel dev %.3f", worst_lattice);
        r.details.push_back(line);
    }
    double worst = 0;
    for (std::int64_t s : {1, 2, 5, 9, 16, 25, 36, 49, 64}) {
        const auto system = FermiSystem::from_shell(s);
        for (const auto& p : reps) worst = std::max(worst, rel(lattice::i_mu(system, p), reference::i_mu(system, p)));
    }
    r.details.push_back(fmt("i_mu vs brute force for S <= 64, %zu transfers: max rel diff %.2e", reps.size(), worst));
    r.measured = max_imu / max_limit;
    r.threshold = "ratio <= 2, brute force rel <= 1e-12";
    r.pass = max_imu <= 2 * max_limit && worst <= 1e-12;
    return r;
}

Result ac8(const Options& opts)
{
    Result r{"AC-8", "c2 <= 0, c2 = -<F H0^-1 F*>, c2(g v) = g^2 c2(v) on S=16", false, 0, "rel <= 1e-12", 0, 120, {}};
    const auto system = FermiSystem::from_shell(16);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto candidates = lattice::enumerate_ball(4);
    perturbation::SumOptions so;
    so.brute_force_ceiling = opts.brute_force_ceiling;
    double consistency = 0, homogeneity = 0, max_c2 = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PotentialSpec::Entry> entries;
        for (const auto& p : candidates) {
            if (-p < p) continue; // one draw per symmetric pair
            if (unif(rng) < 0.35) {
                const double value = unif(rng);
                entries.emplace_back(p, value);
                if (!p.is_zero()) entries.emplace_back(-p, value);
            }
        }
        if (entries.empty()) entries = {{{1, 0, 0}, 0.5}, {{-1, 0, 0}, 0.5}};
        const auto v = PotentialSpec::from_entries(entries);
        const double c2 = perturbation::c2_total(system, v, so).c2;
        const double fhf = perturbation::fhf_vacuum(system, v, so);
        const double g = 0.37;
        const double c2g = perturbation::c2_total(system, v.scaled(g), so).c2;
        max_c2 = std::max(max_c2, c2);
        consistency = std::max(consistency, rel(c2, -fhf));
        homogeneity = std::max(homogeneity, rel(c2g, g * g * c2));
    }
    r.details.push_back(fmt("max c2 over 50 potentials %.6e (must be <= 0)", max_c2));
    r.details.push_back(fmt("max rel |c2 + fhf| %.2e, max rel homogeneity defect %.2e", consistency, homogeneity));
    r.measured = std::max(consistency, homogeneity);
    r.pass = max_c2 <= 0 && consistency <= 1e-12 && homogeneity <= 1e-12;
    return r;
}

Result ac9()
{
    Result r{"AC-9", "trial state: variational, beats E_HF, O(g^3) defect; 1-RDM O(g^2)", false, 0,
             "slopes >= 2.7 and >= 1.7", 0, 600, {}};
    const auto& pts = small_system_sweep();
    bool variational = true, beats = true;
    std::vector<double> gs, defect, rdm;
    for (const auto& p : pts) {
        variational = variational && p.trial_energy >= p.e_n;
        if (p.g >= 0.05) beats = beats && p.trial_energy < p.e_hf;
        gs.push_back(p.g);
        defect.push_back(std::abs(p.trial_energy - p.e_hf + p.fhf_trunc));
        rdm.push_back(p.rdm);
        r.details.push_back(fmt("g=%.2f <psi,H psi>-E_N=%.3e <psi,H psi>-E_HF=%.6e defect=%.4e rdm=%.4e |M-M_sum|=%.1e",
                                p.g, p.trial_energy - p.e_n, p.trial_energy - p.e_hf, defect.back(), p.rdm,
                                p.trial_norm_defect));
    }
    const double s3 = loglog_slope(gs, defect), s2 = loglog_slope(gs, rdm);
    r.details.push_back(fmt("variational %s, beats E_HF for g >= 0.05 %s, defect slope %.4f, 1-RDM slope %.4f",
                            variational ? "yes" : "no", beats ? "yes" : "no", s3, s2));
    r.measured = s3;
    r.pass = variational && beats && s3 >= 2.7 && s2 >= 1.7;
    return r;
}

} // namespace

std::vector<std::string> criterion_ids()
{
    return {"AC-1", "AC-2", "AC-3", "AC-4", "AC-5", "AC-6", "AC-7", "AC-8", "AC-9"};
}

std::vector<Result> run(const Options& opts, const std::function<void(const Result&)>& report)
{
    const std::map<std::string, std::function<Result()>> table{
        {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", [&] { return ac4(opts); }},
        {"AC-5", ac5}, {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", [&] { return ac8(opts); }},
        {"AC-9", ac9},
    };
    for (const auto& id : opts.only)
        if (!table.count(id)) throw ConfigError("unknown criterion '" + id + "'");
    std::vector<Result> out;
    for (const auto& id : criterion_ids()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = table.at(id)();
        } catch (const Error& e) {
            r.id = id;
            r.title = "error";
            r.details.push_back(e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.time_limit > 0 && r.seconds > r.time_limit) {
            r.pass = false;
            r.details.push_back(fmt("runtime %.1f s exceeds limit %.0f s", r.seconds, r.time_limit));
        }
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

void print_text(std::ostream& out, const Result& r, bool with_details)
{
    out << fmt("%-5s %s  measured=%.6g  threshold: %s  (%.2f s)  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
               r.measured, r.threshold.c_str(), r.seconds, r.title.c_str());
    if (with_details)
        for (const auto& d : r.details) out << "      " << d << '\n';
}

void print_csv_header(std::ostream& out) { out << "id,verdict,measured,threshold,seconds,title\n"; }

void print_csv(std::ostream& out, const Result& r)
{
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    out << r.id << ',' << (r.pass ? "PASS" : "FAIL") << ',' << fmt("%.17g", r.measured) << ',' << quote(r.threshold)
        << ',' << fmt("%.3f", r.seconds) << ',' << quote(r.title) << '\n';
}

} // namespace fermicorr::acceptance
