// Batch front-end: one subcommand per library operation, sweeps over the
// coupling and the shell, CSV/JSON records, and the acceptance runner.

#include "fermicorr/acceptance.hpp"
#include "fermicorr/asymptotics.hpp"
#include "fermicorr/error.hpp"
#include "fermicorr/fock.hpp"
#include "fermicorr/perturbation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fermicorr;
using lattice::FermiSystem;
using lattice::Mode;
using perturbation::PotentialSpec;

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kCriterion = 1, kConfig = 2, kBudget = 3 };

struct RunConfig {
    std::string command;
    std::optional<std::int64_t> shell;
    std::optional<double> epsilon;
    double offset = 0.5;
    std::string potential = "zero";
    std::string sweep_g;
    std::vector<std::int64_t> sweep_s;
    std::optional<std::int64_t> modes;
    std::size_t budget_dim = fock::kDefaultDimensionCap;
    std::size_t budget_bruteforce = perturbation::kDefaultBruteForceCeiling;
    std::size_t iteration_cap = 40;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 20240611;
    std::vector<std::string> only;
    bool dry_run = false;
    std::string p = "1,0,0";
    double eta = 0.0;
    double radius = 0.0;
    double a = 0.0;
    std::string method = "support";
};

// One sweep point.  Numeric outputs are kept in insertion order.
struct Record {
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, double>> outputs;
    std::vector<std::pair<std::string, std::string>> tags;
    std::string status = "ok";
    double seconds = 0.0;
};

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Mode parse_mode(const std::string& s)
{
    Mode m;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    std::string rest;
    if (!(in >> m.x >> c1 >> m.y >> c2 >> m.z) || c1 != ',' || c2 != ',' || (in >> rest))
        throw ConfigError("--p expects x,y,z integers, got '" + s + "'");
    return m;
}

std::vector<double> parse_sweep(const std::string& spec)
{
    double a = 0, b = 0;
    long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw ConfigError("--sweep-g expects a:b:n with n >= 1, got '" + spec + "'");
    std::vector<double> g;
    for (long i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1));
    return g;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string canonical(const RunConfig& c)
{
    std::ostringstream o;
    o << c.command << "|S=" << (c.shell ? std::to_string(*c.shell) : "") << "|eps=" << (c.epsilon ? num(*c.epsilon) : "")
      << "|offset=" << num(c.offset) << "|pot=" << c.potential << "|sweep_g=" << c.sweep_g << "|sweep_S=";
    for (auto s : c.sweep_s) o << s << ',';
    o << "|modes=" << (c.modes ? std::to_string(*c.modes) : "") << "|p=" << c.p << "|eta=" << num(c.eta)
      << "|R=" << num(c.radius) << "|a=" << num(c.a) << "|method=" << c.method << "|bd=" << c.budget_dim
      << "|bb=" << c.budget_bruteforce << "|seed=" << c.seed;
    return o.str();
}

void validate(const RunConfig& c)
{
    if (c.budget_dim == 0 || c.budget_bruteforce == 0 || c.iteration_cap == 0)
        throw ConfigError("budgets must be positive");
    if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be csv or json");
    if (c.shell && c.epsilon) throw ConfigError("give either --S or --eps, not both");
    if (c.epsilon && !(*c.epsilon > 0)) throw ConfigError("--eps must be positive");
    if (c.shell && *c.shell < 0) throw ConfigError("--S must be nonnegative");
    if (c.method != "support" && c.method != "brute-force") throw ConfigError("--method must be support or brute-force");
}

FermiSystem system_for(const RunConfig& c, std::optional<std::int64_t> shell)
{
    if (shell) return FermiSystem::from_shell(*shell, c.offset);
    if (c.epsilon) return FermiSystem::from_epsilon(*c.epsilon);
    throw ConfigError("command '" + c.command + "' needs --S, --eps or --sweep-S");
}

void add_system(Record& r, const FermiSystem& s)
{
    r.inputs.emplace_back("S", std::to_string(s.shell()));
    r.inputs.emplace_back("N", std::to_string(s.particle_number()));
    r.inputs.emplace_back("epsilon", num(s.epsilon()));
}

perturbation::SumOptions sum_options(const RunConfig& c)
{
    perturbation::SumOptions o;
    o.outer_shell = c.modes;
    o.brute_force_ceiling = c.budget_bruteforce;
    return o;
}

// Computes one sweep point of `c.command`; fills the outputs of `r`.
void compute(const RunConfig& c, const FermiSystem* sys, const PotentialSpec& v, Record& r)
{
    const std::string& cmd = c.command;
    auto out = [&](const char* name, double x) { r.outputs.emplace_back(name, x); };
    if (cmd == "ball") {
        out("count", static_cast<double>(lattice::count_ball(sys->shell())));
        out("fermi_radius2", sys->fermi_radius2());
        out("kinetic_energy", perturbation::sea_kinetic_energy(*sys));
    } else if (cmd == "shell-count") {
        const double eta = c.eta > 0 ? c.eta : 1.0 / static_cast<double>(sys->particle_number());
        const auto sc = lattice::shell_count(*sys, eta);
        out("eta", eta);
        out("count", static_cast<double>(sc.count));
        out("fraction", sc.fraction);
    } else if (cmd == "gauss-error") {
        if (!(c.radius > 0)) throw ConfigError("gauss-error needs --R > 0");
        out("R", c.radius);
        out("E3", lattice::gauss_error(c.radius));
    } else if (cmd == "imu") {
        const Mode p = parse_mode(c.p);
        out("i_mu", lattice::i_mu(*sys, p));
        if (!p.is_zero()) {
            out("limiting_integral", perturbation::limiting_imu_integral(*sys, p));
            out("limiting_integral_lattice", perturbation::limiting_imu_integral_lattice(*sys, p));
        }
    } else if (cmd == "hf") {
        out("hf_energy", perturbation::hf_energy(*sys, v));
    } else if (cmd == "c2") {
        const auto m = c.method == "support" ? perturbation::Method::Support : perturbation::Method::BruteForce;
        const auto res = perturbation::c2_total(*sys, v, sum_options(c), m);
        out("direct", res.direct);
        out("exchange", res.exchange);
        out("c2", res.c2);
        r.tags.emplace_back("direct_method", perturbation::to_string(res.direct_method));
        r.tags.emplace_back("exchange_method", perturbation::to_string(res.exchange_method));
    } else if (cmd == "fhf") {
        out("fhf_vacuum", perturbation::fhf_vacuum(*sys, v, sum_options(c)));
    } else if (cmd == "trial-norm") {
        const auto t = perturbation::trial_normalization(*sys, v, sum_options(c));
        out("j1", t.j1);
        out("j2", t.j2);
        out("m", t.m);
    } else if (cmd == "c2-asymptotic") {
        if (!c.epsilon) throw ConfigError("c2-asymptotic needs --eps");
        out("constant", perturbation::correlation_constant());
        out("asymptotic_c2", perturbation::asymptotic_c2(v, *c.epsilon));
        out("asymptotic_c2_lattice", perturbation::asymptotic_c2_lattice(v, *c.epsilon));
    } else if (cmd == "xy-integral") {
        out("a", c.a);
        out("value", perturbation::xy_integral(c.a));
        out("nested_gauss_kronrod", perturbation::xy_integral(c.a, perturbation::XyScheme::NestedGaussKronrod));
        out("duffy", perturbation::xy_integral(c.a, perturbation::XyScheme::Duffy));
    } else if (cmd == "ed" || cmd == "identity" || cmd == "dump-hamiltonian") {
        const std::int64_t outer = c.modes.value_or(sys->shell());
        const fock::ModeSet modes(*sys, outer);
        const auto n = static_cast<std::size_t>(sys->particle_number());
        r.inputs.emplace_back("modes", std::to_string(modes.size()));
        if (cmd == "identity") {
            const auto rep = fock::verify_identity(*sys, modes, v);
            out("sector_defect", rep.sector_defect);
            out("full_defect", rep.full_defect);
            out("full_defect_counterterm", rep.full_defect_counterterm);
            out("q_split_defect", rep.q_split_defect);
            out("q1_defect", rep.q1_defect);
            return;
        }
        fock::require_closed_shell(modes, n);
        const auto sector = fock::Basis::sector(modes.size(), n, c.budget_dim);
        const auto h = fock::assemble_hamiltonian(*sys, modes, v, sector);
        if (cmd == "dump-hamiltonian") {
            if (c.out.empty()) throw ConfigError("dump-hamiltonian needs --out");
            std::ofstream f(c.out);
            if (!f) throw ConfigError("cannot write '" + c.out + "'");
            h.write_triplets(f);
            out("dimension", static_cast<double>(h.dimension()));
            out("nonzeros", static_cast<double>(h.nonzeros()));
            return;
        }
        fock::EigenOptions eo;
        eo.max_restarts = c.iteration_cap;
        eo.seed = c.seed;
        const auto gs = fock::ground_state(h, eo);
        auto trunc = sum_options(c);
        trunc.outer_shell = outer;
        const double ehf = perturbation::hf_energy(*sys, v);
        const auto trial = fock::trial_state(*sys, modes, v);
        out("dimension", static_cast<double>(sector.dimension()));
        out("ground_energy", gs.energy);
        out("residual", gs.residual);
        out("hf_energy", ehf);
        out("c2_trunc", perturbation::c2_total(*sys, v, trunc).c2);
        out("trial_energy", h.expectation(trial.psi));
        out("trial_normalization", trial.normalization);
        out("rdm_distance", fock::one_rdm_distance(gs.vector, sector, modes).trace);
        r.tags.emplace_back("solver", gs.method);
    } else {
        throw ConfigError("unknown command '" + cmd + "'");
    }
}

void plan(const RunConfig& c, const FermiSystem* sys, std::ostream& o)
{
    o << "# plan: " << c.command;
    if (sys) {
        o << " S=" << sys->shell() << " N=" << sys->particle_number() << " eps=" << num(sys->epsilon());
        if (c.command == "ed" || c.command == "identity" || c.command == "dump-hamiltonian") {
            const std::int64_t outer = c.modes.value_or(sys->shell());
            const auto m = static_cast<std::size_t>(lattice::count_ball(outer));
            const std::size_t dim = fock::binomial(m, static_cast<std::size_t>(sys->particle_number()));
            o << " modes=" << m << " sector_dimension=" << dim
              << (dim > c.budget_dim ? " (exceeds --budget-dim)" : "");
        } else if (c.command == "c2" || c.command == "fhf" || c.command == "trial-norm") {
            o << " pairwise_cost~N^2=" << num(std::pow(static_cast<double>(sys->particle_number()), 2));
            if (static_cast<std::size_t>(sys->particle_number()) > c.budget_bruteforce)
                o << " (above brute-force ceiling: " << (c.command == "c2" ? "histogram/support only" : "budget error")
                  << ")";
        }
    }
    o << '\n';
}

void write_csv(std::ostream& o, const std::vector<Record>& recs)
{
    if (recs.empty()) return;
    // Columns from the first successful record; errored points leave them blank.
    const Record* proto = &recs.front();
    for (const auto& r : recs)
        if (r.status == "ok") {
            proto = &r;
            break;
        }
    bool first = true;
    auto col = [&](const std::string& s) {
        o << (first ? "" : ",") << s;
        first = false;
    };
    for (const auto& [k, _] : proto->inputs) col(k);
    for (const auto& [k, _] : proto->outputs) col(k);
    for (const auto& [k, _] : proto->tags) col(k);
    col("status");
    o << '\n';
    for (const auto& r : recs) {
        first = true;
        auto lookup = [](const auto& list, const std::string& key) -> std::optional<std::string> {
            for (const auto& [k, v] : list)
                if (k == key) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) return num(v);
                    else return v;
                }
            return std::nullopt;
        };
        for (const auto& [k, _] : proto->inputs) col(lookup(r.inputs, k).value_or(""));
        for (const auto& [k, _] : proto->outputs) col(lookup(r.outputs, k).value_or(""));
        for (const auto& [k, _] : proto->tags) col(lookup(r.tags, k).value_or(""));
        std::string status = r.status;
        for (auto& ch : status)
            if (ch == ',' || ch == '\n') ch = ';';
        col(status);
        o << '\n';
    }
}

nlohmann::json to_json(const RunConfig& c, const std::vector<Record>& recs, double total)
{
    nlohmann::json j;
    j["meta"] = {{"tool", "fermicorr"}, {"version", kVersion}, {"command", c.command},
                 {"config_hash", fnv1a(canonical(c))}, {"seconds", total}};
    j["meta"]["timings"] = nlohmann::json::array();
    j["records"] = nlohmann::json::array();
    for (const auto& r : recs) {
        nlohmann::json rec;
        for (const auto& [k, v] : r.inputs) rec[k] = v;
        for (const auto& [k, v] : r.outputs) rec[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        for (const auto& [k, v] : r.tags) rec[k] = v;
        rec["status"] = r.status;
        j["records"].push_back(rec);
        j["meta"]["timings"].push_back(r.seconds);
    }
    return j;
}

int run(const RunConfig& c)
{
    validate(c);
    std::vector<std::string> warnings;
    const PotentialSpec base = perturbation::parse_potential(c.potential, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: potential: " << w << '\n';

    std::vector<std::optional<std::int64_t>> shells;
    if (!c.sweep_s.empty())
        for (auto s : c.sweep_s) shells.emplace_back(s);
    else
        shells.push_back(c.shell);
    std::vector<std::optional<double>> couplings{std::nullopt};
    if (!c.sweep_g.empty()) {
        couplings.clear();
        for (double g : parse_sweep(c.sweep_g)) couplings.emplace_back(g);
    }
    const bool needs_system = c.command != "gauss-error" && c.command != "c2-asymptotic" && c.command != "xy-integral";

    if (c.dry_run) {
        for (const auto& s : shells) {
            if (!needs_system) {
                plan(c, nullptr, std::cout);
                continue;
            }
            const auto sys = system_for(c, s);
            plan(c, &sys, std::cout);
        }
        std::cout << "# points: " << shells.size() * couplings.size() << '\n';
        return kOk;
    }

    int code = kOk;
    std::vector<Record> recs;
    const auto t_all = std::chrono::steady_clock::now();
    for (const auto& s : shells)
        for (const auto& g : couplings) {
            Record r;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                std::optional<FermiSystem> sys;
                if (needs_system) {
                    sys = system_for(c, s);
                    add_system(r, *sys);
                }
                r.inputs.emplace_back("g", g ? num(*g) : "1");
                compute(c, sys ? &*sys : nullptr, g ? base.scaled(*g) : base, r);
            } catch (const BudgetError& e) {
                r.status = std::string("budget: ") + e.what();
                code = std::max<int>(code, kBudget);
            } catch (const CapacityError& e) {
                r.status = std::string("budget: ") + e.what();
                code = std::max<int>(code, kBudget);
            } catch (const ConvergenceError& e) {
                r.status = std::string("budget: ") + e.what();
                code = std::max<int>(code, kBudget);
            } catch (const Error& e) {
                // configuration, domain and degeneracy problems
                r.status = std::string("error: ") + e.what();
                code = std::max<int>(code, kConfig);
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (r.status != "ok") std::cerr << c.command << ": " << r.status << '\n';
            recs.push_back(std::move(r));
        }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count();

    std::ofstream file;
    if (!c.out.empty() && c.command != "dump-hamiltonian") {
        file.open(c.out);
        if (!file) throw ConfigError("cannot write '" + c.out + "'");
    }
    std::ostream& o = file.is_open() ? file : std::cout;
    if (c.format == "json") {
        o << to_json(c, recs, total).dump(2) << '\n';
    } else {
        // metadata block first, then the deterministic body
        o << "# fermicorr " << kVersion << " " << c.command << " config_hash " << fnv1a(canonical(c)) << '\n';
        o << "# seconds";
        for (const auto& r : recs) o << ' ' << num(r.seconds);
        o << '\n';
        write_csv(o, recs);
    }
    return code;
}

int run_acceptance(const RunConfig& c)
{
    acceptance::Options opts;
    opts.only = c.only;
    opts.seed = c.seed;
    opts.brute_force_ceiling = c.budget_bruteforce;
    if (c.dry_run) {
        for (const auto& id : acceptance::criterion_ids())
            if (opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end())
                std::cout << "# plan: " << id << '\n';
        return kOk;
    }
    std::ofstream file;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) throw ConfigError("cannot write '" + c.out + "'");
    }
    std::ostream& o = file.is_open() ? file : std::cout;
    const bool csv = c.format == "csv";
    if (csv) acceptance::print_csv_header(o);
    const auto results = acceptance::run(opts, [&](const acceptance::Result& r) {
        if (csv)
            acceptance::print_csv(o, r);
        else
            acceptance::print_text(o, r);
        o.flush();
    });
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    return failed ? kCriterion : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fermicorr: correlation energy of mean-field fermions on the lattice"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    RunConfig cfg;
    std::string emit;

    auto common = [&](CLI::App* sub, bool fock_opts) {
        sub->add_option("--S", cfg.shell, "Fermi ball shell threshold: B = {n : |n|^2 <= S}");
        sub->add_option("--eps", cfg.epsilon, "semiclassical parameter (S = floor(mu / (2 pi eps)^2))");
        sub->add_option("--offset", cfg.offset, "Fermi level r2 = S + offset when built from --S")->check(CLI::Range(0.0, 0.999999));
        sub->add_option("--pot", cfg.potential, "potential: file, single:p=(x,y,z):g=G, shell:r2=R:g=G, ball:r2=R:g=G, zero");
        sub->add_option("--sweep-g", cfg.sweep_g, "scale the potential by g over a:b:n");
        sub->add_option("--sweep-S", cfg.sweep_s, "list of shell thresholds")->delimiter(',');
        sub->add_option("--budget-bruteforce", cfg.budget_bruteforce, "largest N for pairwise sums");
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_flag("--dry-run", cfg.dry_run, "print the resolved plan without computing");
        if (fock_opts) {
            sub->add_option("--modes", cfg.modes, "truncation ball |n|^2 <= S' for the Fock space / sums");
            sub->add_option("--budget-dim", cfg.budget_dim, "largest sector dimension");
            sub->add_option("--iteration-cap", cfg.iteration_cap, "Lanczos restarts");
        }
    };

    struct Sub {
        const char* name;
        const char* help;
        bool fock;
    };
    const std::vector<Sub> subs{
        {"ball", "count the Fermi ball", false},
        {"shell-count", "modes with e(k) <= eta (default eta = 1/N)", false},
        {"gauss-error", "E3(R) = count - (4 pi/3) R^3", false},
        {"imu", "I_mu(p) and its limiting integral", false},
        {"hf", "Hartree-Fock energy of the Fermi sea", false},
        {"c2", "second-order correlation energy", true},
        {"fhf", "<Omega, F H0^-1 F* Omega>", true},
        {"trial-norm", "trial-state normalization J1, J2, M", true},
        {"c2-asymptotic", "leading eps -> 0 term", false},
        {"xy-integral", "int int x y / (a + x + y)", false},
        {"ed", "exact diagonalization on a truncated mode set", true},
        {"identity", "operator identity defects", true},
        {"dump-hamiltonian", "write the N-sector Hamiltonian as sparse triplets", true},
    };
    std::map<std::string, CLI::App*> handles;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        common(sub, s.fock);
        handles[s.name] = sub;
    }
    handles["shell-count"]->add_option("--eta", cfg.eta, "energy window");
    handles["gauss-error"]->add_option("--R", cfg.radius, "radius")->required();
    handles["imu"]->add_option("--p", cfg.p, "transfer x,y,z");
    handles["xy-integral"]->add_option("--a", cfg.a, "a >= 0");
    handles["c2"]->add_option("--method", cfg.method, "exchange method: support or brute-force");

    auto* acc = app.add_subcommand("acceptance", "run the acceptance criteria");
    acc->add_option("--only", cfg.only, "criteria to run, e.g. AC-3")->delimiter(',');
    std::string acc_format = "text";
    acc->add_option("--format", acc_format, "text or csv");
    acc->add_option("--emit", emit, "alias of --format");
    acc->add_option("--out", cfg.out, "output file");
    acc->add_option("--seed", cfg.seed, "random seed");
    acc->add_option("--budget-bruteforce", cfg.budget_bruteforce, "largest N for pairwise sums");
    acc->add_flag("--dry-run", cfg.dry_run, "list the criteria without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (acc->parsed()) {
            cfg.command = "acceptance";
            cfg.format = emit.empty() ? acc_format : emit;
            if (cfg.format != "text" && cfg.format != "csv") throw ConfigError("--format must be text or csv");
            return run_acceptance(cfg);
        }
        for (const auto& [name, sub] : handles)
            if (sub->parsed()) cfg.command = name;
        return run(cfg);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const CapacityError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
}
