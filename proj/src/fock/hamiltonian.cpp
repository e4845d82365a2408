#include "fermicorr/fock/hamiltonian.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/perturbation.hpp"

#include <cmath>
#include <limits>
#include <tuple>

namespace fermicorr::fock {

namespace {

// Mode lookups restricted to the particle (b) or hole (c) side.
struct Sides {
    const ModeSet& modes;

    std::optional<std::size_t> any(const Mode& k) const { return modes.index(k); }
    std::optional<std::size_t> b(const Mode& k) const
    {
        auto i = modes.index(k);
        if (i && !modes.in_ball(*i)) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> c(const Mode& k) const
    {
        auto i = modes.index(k);
        if (i && modes.in_ball(*i)) return i;
        return std::nullopt;
    }
};

using Slot = std::optional<std::size_t>;

// Adds coeff * product of the given ladder operators if every mode exists.
void add_term(OperatorSum& op, double coeff, std::initializer_list<std::pair<Slot, bool>> factors)
{
    std::vector<LadderOp> ops;
    for (const auto& [slot, creation] : factors) {
        if (!slot) return;
        ops.push_back({*slot, creation});
    }
    op.add(coeff, std::move(ops));
}

constexpr bool C = true;  // creation
constexpr bool A = false; // annihilation

double inverse_2n(const FermiSystem& system)
{
    return 1.0 / (2.0 * static_cast<double>(system.particle_number()));
}

} // namespace

OperatorSum number_operator(const ModeSet& modes)
{
    OperatorSum n;
    for (std::size_t i = 0; i < modes.size(); ++i) n.add(1.0, {create(i), annihilate(i)});
    return n;
}

OperatorSum momentum_operator(const ModeSet& modes, int axis)
{
    OperatorSum p;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& m = modes[i];
        const double comp = static_cast<double>(axis == 0 ? m.x : axis == 1 ? m.y : m.z);
        p.add(comp, {create(i), annihilate(i)});
    }
    return p;
}

OperatorSum kinetic_operator(const FermiSystem& system, const ModeSet& modes)
{
    OperatorSum t;
    for (std::size_t i = 0; i < modes.size(); ++i) t.add(system.kinetic(modes[i]), {create(i), annihilate(i)});
    return t;
}

OperatorSum interaction_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    const Sides s{modes};
    const double pre = inverse_2n(system);
    OperatorSum w;
    for (const auto& [p, vp] : v.entries())
        for (const auto& k : modes.modes())
            for (const auto& kp : modes.modes())
                add_term(w, pre * vp, {{s.any(k + p), C}, {s.any(kp - p), C}, {s.any(kp), A}, {s.any(k), A}});
    return w;
}

OperatorSum hamiltonian_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    return kinetic_operator(system, modes) + interaction_operator(system, modes, v);
}

SparseOperator assemble_hamiltonian(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v,
                                    const Basis& basis)
{
    if (basis.mode_count() != modes.size()) throw DomainError("basis and mode set disagree");
    return SparseOperator::assemble(hamiltonian_operator(system, modes, v), basis);
}

ParticleHoleMap::ParticleHoleMap(const ModeSet& modes) : fermi_(modes.fermi_mask()), modes_(modes.size()) {}

Transition ParticleHoleMap::apply(Mask mask) const noexcept
{
    Transition t{fermi_, 1};
    // Highest index acts first on the filled sea.
    for (int j = static_cast<int>(modes_) - 1; j >= 0; --j) {
        const Mask bit = Mask{1} << j;
        if (!(mask & bit)) continue;
        const LadderOp op{static_cast<std::size_t>(j), (fermi_ & bit) == 0};
        t = *apply_ladder(op, t); // always admissible: out-modes empty, in-modes filled
    }
    return t;
}

Eigen::MatrixXd ParticleHoleMap::matrix(const Basis& from, const Basis& to) const
{
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(to.dimension(), from.dimension());
    for (std::size_t j = 0; j < from.dimension(); ++j) {
        const auto t = apply(from[j]);
        if (auto i = to.find(t.mask)) r(*i, j) = t.sign;
    }
    return r;
}

SparseOperator ParticleHoleMap::conjugate(const SparseOperator& a, const Basis& image, const Basis& preimage) const
{
    if (a.dimension() != image.dimension()) throw DomainError("operator does not act on the image basis");
    const std::size_t dim = preimage.dimension();
    // image index -> (preimage index, sign)
    std::vector<std::size_t> back(image.dimension(), std::numeric_limits<std::size_t>::max());
    std::vector<int> sign(image.dimension(), 0);
    for (std::size_t x = 0; x < dim; ++x) {
        const auto t = apply(preimage[x]);
        const auto y = image.find(t.mask);
        if (!y) throw DomainError("particle-hole image of the preimage basis is not contained in the image basis");
        back[*y] = x;
        sign[*y] = t.sign;
    }
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    triplets.reserve(a.nonzeros());
    const auto& off = a.row_offsets();
    for (std::size_t y = 0; y < image.dimension(); ++y) {
        if (sign[y] == 0) continue;
        for (std::size_t e = off[y]; e < off[y + 1]; ++e) {
            const std::size_t yp = a.columns()[e];
            if (sign[yp] == 0) throw DomainError("operator couples the image to states outside it");
            triplets.emplace_back(back[y], back[yp], sign[y] * sign[yp] * a.values()[e]);
        }
    }
    return SparseOperator::from_triplets(dim, preimage.hash(), std::move(triplets));
}

Eigen::VectorXd ParticleHoleMap::map_vector(const Eigen::VectorXd& v, const Basis& preimage, const Basis& image) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(image.dimension());
    for (std::size_t x = 0; x < preimage.dimension(); ++x) {
        if (v[x] == 0.0) continue;
        const auto t = apply(preimage[x]);
        const auto y = image.find(t.mask);
        if (!y) throw DomainError("vector has weight outside the image basis");
        out[*y] = t.sign * v[x];
    }
    return out;
}

OperatorSum pair_creation_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    const Sides s{modes};
    const double pre = inverse_2n(system);
    OperatorSum f;
    for (const auto& [p, vp] : v.entries())
        for (const auto& k : modes.modes())
            for (const auto& kp : modes.modes())
                add_term(f, pre * vp, {{s.b(k + p), C}, {s.b(kp - p), C}, {s.c(kp), C}, {s.c(k), C}});
    return f;
}

Blocks assemble_blocks(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    const Sides s{modes};
    const double pre = inverse_2n(system);
    const double inv_n = 2.0 * pre;
    Blocks bl;
    bl.e_hf = perturbation::hf_energy(system, v);
    const double v0 = v(Mode{});

    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double sgn = modes.in_ball(i) ? -1.0 : 1.0;
        bl.h0.add(system.dispersion(modes[i]), {create(i), annihilate(i)});
        bl.d.add(sgn * v0, {create(i), annihilate(i)});
        bl.counterterm.add(sgn * (system.mu() + v0), {create(i), annihilate(i)});
    }

    for (const auto& [p, vp] : v.entries()) {
        const double g = pre * vp;
        for (const auto& k : modes.modes()) {
            if (system.contains(k)) {
                add_term(bl.x, -inv_n * vp, {{s.b(k + p), C}, {s.b(k + p), A}});
                add_term(bl.x, inv_n * vp, {{s.c(k + p), C}, {s.c(k + p), A}});
            }
            if (auto kb = s.b(k); kb && s.b(k + p)) add_term(bl.q1a, -g, {{kb, C}, {kb, A}});
            if (auto kc = s.c(k); kc && s.c(k - p)) add_term(bl.q1a, -g, {{kc, C}, {kc, A}});

            for (const auto& kp : modes.modes()) {
                add_term(bl.q1, g, {{s.b(k + p), C}, {s.b(kp - p), C}, {s.b(kp), A}, {s.b(k), A}});
                add_term(bl.q1, g, {{s.c(k + p), C}, {s.c(kp - p), C}, {s.c(kp), A}, {s.c(k), A}});
                add_term(bl.q1, -2.0 * g, {{s.b(k + p), C}, {s.c(kp), C}, {s.c(kp - p), A}, {s.b(k), A}});
                add_term(bl.q2a, 2.0 * g, {{s.b(k + p), C}, {s.c(k), C}, {s.c(kp - p), A}, {s.b(kp), A}});
                add_term(bl.q2b, g, {{s.b(k + p), C}, {s.b(kp - p), C}, {s.c(kp), C}, {s.c(k), C}});
                add_term(bl.q3, -2.0 * g, {{s.b(k + p), C}, {s.b(kp - p), C}, {s.c(k), C}, {s.b(kp), A}});
                add_term(bl.q3, 2.0 * g, {{s.b(k + p), C}, {s.c(kp + p), C}, {s.c(k), C}, {s.c(kp), A}});
            }
        }

        OperatorSum dp;
        for (const auto& k : modes.modes()) {
            add_term(dp, 1.0, {{s.b(k + p), C}, {s.b(k), A}});
            add_term(dp, -1.0, {{s.c(k - p), C}, {s.c(k), A}});
        }
        bl.dstar_d.add(dp.adjoint() * dp, g);
        bl.dp.emplace_back(p, std::move(dp));
    }
    bl.q2c = bl.q2b.adjoint();
    const OperatorSum q3_hc = bl.q3.adjoint();
    bl.q3.add(q3_hc);

    bl.q = bl.q1 + bl.q2a + bl.q2b + bl.q2c + bl.q3;
    return bl;
}

IdentityReport verify_identity(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v,
                               std::size_t full_mode_limit)
{
    const Blocks bl = assemble_blocks(system, modes, v);
    const ParticleHoleMap r(modes);
    const OperatorSum h = hamiltonian_operator(system, modes, v);
    const OperatorSum rhs_ops = bl.h0 + bl.x + bl.q;
    const OperatorSum q_split = bl.q1 + bl.q2a + bl.q2b + bl.q2c + bl.q3;
    const OperatorSum q1_split = bl.dstar_d + bl.q1a;
    IdentityReport rep;

    auto compare = [&](const Basis& image, const Basis& preimage, bool counterterm) {
        const SparseOperator lhs = r.conjugate(SparseOperator::assemble(h, image), image, preimage);
        SparseOperator rhs = bl.e_hf * SparseOperator::identity(preimage.dimension(), preimage.hash()) +
                             SparseOperator::assemble(rhs_ops, preimage);
        if (counterterm) rhs = rhs + SparseOperator::assemble(bl.counterterm, preimage);
        return max_entry_difference(lhs, rhs);
    };
    auto block_defects = [&](const Basis& basis) {
        const double dq = max_entry_difference(SparseOperator::assemble(bl.q, basis),
                                               SparseOperator::assemble(q_split, basis));
        const double d1 = max_entry_difference(SparseOperator::assemble(bl.q1, basis),
                                               SparseOperator::assemble(q1_split, basis));
        rep.q_split_defect = std::max(rep.q_split_defect, dq);
        rep.q1_defect = std::max(rep.q1_defect, d1);
    };

    const Basis image = Basis::sector(modes.size(), static_cast<std::size_t>(system.particle_number()));
    const Basis preimage = Basis::balanced(modes.size(), modes.fermi_mask());
    rep.sector_dimension = preimage.dimension();
    rep.sector_defect = compare(image, preimage, false);
    block_defects(preimage);

    if (modes.size() <= full_mode_limit) {
        const Basis full = Basis::full(modes.size());
        rep.full_dimension = full.dimension();
        rep.full_defect = compare(full, full, false);
        rep.full_defect_counterterm = compare(full, full, true);
        block_defects(full);
    } else {
        rep.full_defect = rep.full_defect_counterterm = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

} // namespace fermicorr::fock
