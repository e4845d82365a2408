#include "fermicorr/potential.hpp"

#include "fermicorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

namespace fermicorr::perturbation {

PotentialSpec PotentialSpec::from_entries(std::vector<Entry> entries, bool complete_symmetry,
                                          std::vector<std::string>* warnings)
{
    std::erase_if(entries, [](const Entry& e) { return e.second == 0.0; });
    for (const auto& [p, value] : entries) {
        if (!std::isfinite(value)) throw DomainError("potential value at " + lattice::to_string(p) + " is not finite");
        if (value < 0.0) throw DomainError("potential value at " + lattice::to_string(p) + " is negative");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].first == entries[i - 1].first)
            throw DomainError("duplicate potential entry at " + lattice::to_string(entries[i].first));

    auto find = [&](const Mode& p) {
        auto it = std::lower_bound(entries.begin(), entries.end(), p,
                                   [](const Entry& e, const Mode& m) { return e.first < m; });
        return (it != entries.end() && it->first == p) ? it : entries.end();
    };
    std::vector<Entry> mirrors;
    for (const auto& [p, value] : entries) {
        const auto partner = find(-p);
        if (partner == entries.end()) {
            if (!complete_symmetry)
                throw DomainError("potential is not symmetric: " + lattice::to_string(p) + " has no partner");
            if (warnings)
                warnings->push_back("mirrored " + lattice::to_string(p) + " to " + lattice::to_string(-p));
            mirrors.emplace_back(-p, value);
        } else if (partner->second != value) {
            throw DomainError("potential is not symmetric: v" + lattice::to_string(p) + " != v" +
                              lattice::to_string(-p));
        }
    }
    if (!mirrors.empty()) {
        entries.insert(entries.end(), mirrors.begin(), mirrors.end());
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    }
    return PotentialSpec(std::move(entries));
}

PotentialSpec PotentialSpec::pair(const Mode& p, double g)
{
    if (p.is_zero()) return from_entries({{p, g}});
    return from_entries({{p, g}, {-p, g}});
}

PotentialSpec PotentialSpec::shell(std::int64_t norm2, double g)
{
    std::vector<Entry> entries;
    for (const auto& m : lattice::enumerate_ball(norm2))
        if (m.norm2() == norm2) entries.emplace_back(m, g);
    return from_entries(std::move(entries));
}

PotentialSpec PotentialSpec::ball(std::int64_t norm2, double g)
{
    std::vector<Entry> entries;
    for (const auto& m : lattice::enumerate_ball(norm2)) entries.emplace_back(m, g);
    return from_entries(std::move(entries));
}

double PotentialSpec::operator()(const Mode& p) const noexcept
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, const Mode& m) { return e.first < m; });
    return (it != entries_.end() && it->first == p) ? it->second : 0.0;
}

double PotentialSpec::l1_norm() const noexcept
{
    double s = 0.0;
    for (const auto& e : entries_) s += e.second;
    return s;
}

double PotentialSpec::max_value() const noexcept
{
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.second);
    return m;
}

double PotentialSpec::physical_momentum_weight() const noexcept
{
    double s = 0.0;
    for (const auto& [p, value] : entries_)
        s += 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(p.norm2())) * value * value;
    return s;
}

PotentialSpec PotentialSpec::scaled(double g) const
{
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("potential scale must be finite and nonnegative");
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.second *= g;
    if (g == 0.0) out.clear();
    return PotentialSpec(std::move(out));
}

PotentialSpec parse_potential_table(std::istream& in, const std::string& source_name,
                                    std::vector<std::string>* warnings)
{
    std::vector<PotentialSpec::Entry> entries;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(source_name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::int64_t x = 0, y = 0, z = 0;
        double value = 0.0;
        std::string first;
        if (!(fields >> first)) continue;
        std::istringstream head(first);
        if (!(head >> x) || !head.eof()) fail("expected integer px, got '" + first + "'");
        if (!(fields >> y >> z)) fail("expected integer momenta `px py pz value`");
        if (!(fields >> value)) fail("missing potential value");
        std::string extra;
        if (fields >> extra) fail("trailing field '" + extra + "'");
        if (!std::isfinite(value) || value < 0.0) fail("potential values must be finite and nonnegative");
        entries.emplace_back(Mode{x, y, z}, value);
    }
    try {
        return PotentialSpec::from_entries(std::move(entries), true, warnings);
    } catch (const DomainError& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
}

PotentialSpec parse_potential(const std::string& spec, std::vector<std::string>* warnings)
{
    static const std::regex single(R"(single:p=\((-?\d+),(-?\d+),(-?\d+)\):g=([-+0-9.eE]+))");
    static const std::regex shaped(R"((shell|ball):r2=(\d+):g=([-+0-9.eE]+))");
    std::smatch m;
    try {
        if (spec == "zero" || spec == "none") return {};
        if (std::regex_match(spec, m, single)) {
            const Mode p{std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3])};
            return PotentialSpec::pair(p, std::stod(m[4]));
        }
        if (std::regex_match(spec, m, shaped)) {
            const auto r2 = std::stoll(m[2]);
            const double g = std::stod(m[3]);
            return m[1] == "shell" ? PotentialSpec::shell(r2, g) : PotentialSpec::ball(r2, g);
        }
    } catch (const DomainError& e) {
        throw ConfigError("potential '" + spec + "': " + e.what());
    } catch (const std::logic_error&) {
        throw ConfigError("potential '" + spec + "': malformed number");
    }
    if (spec.find(':') != std::string::npos && spec.find('/') == std::string::npos)
        throw ConfigError("unrecognized inline potential '" + spec + "'");
    std::ifstream file(spec);
    if (!file) throw ConfigError("cannot open potential file '" + spec + "'");
    return parse_potential_table(file, spec, warnings);
}

} // namespace fermicorr::perturbation
