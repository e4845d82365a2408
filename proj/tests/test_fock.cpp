#include "fermicorr/error.hpp"
#include "fermicorr/fock.hpp"
#include "fermicorr/perturbation.hpp"

#include <doctest.h>

#include <sstream>

using namespace fermicorr;
using namespace fermicorr::fock;
using lattice::FermiSystem;
using lattice::Mode;
using perturbation::PotentialSpec;

namespace {

Eigen::MatrixXd dense_of(const OperatorSum& op, const Basis& b) { return SparseOperator::assemble(op, b).to_dense(); }

OperatorSum ladder(std::size_t i, bool creation)
{
    OperatorSum o;
    o.add(1.0, {{i, creation}});
    return o;
}

double commutator_defect(const SparseOperator& a, const SparseOperator& b)
{
    return max_entry_difference(a * b, b * a);
}

} // namespace

TEST_CASE("basis enumeration")
{
    CHECK(Basis::sector(7, 0).dimension() == 1);
    CHECK(Basis::sector(7, 7).dimension() == 1);
    CHECK(Basis::sector(19, 7).dimension() == 50388);
    const auto b = Basis::sector(10, 4);
    CHECK(std::is_sorted(b.states().begin(), b.states().end()));
    for (Mask m : b.states()) CHECK(__builtin_popcountll(m) == 4);
    CHECK(b.dimension() == binomial(10, 4));
    CHECK(Basis::full(5).dimension() == 32);
    CHECK_THROWS_AS(Basis::sector(30, 15, 1000), CapacityError);
    const auto bal = Basis::balanced(6, 0b000111);
    for (Mask m : bal.states())
        CHECK(__builtin_popcountll(m & 0b111000) == __builtin_popcountll(m & 0b000111));
    CHECK(bal.dimension() == binomial(6, 3));
    CHECK(b.hash() != Basis::sector(10, 5).hash());
}

TEST_CASE("sign convention")
{
    // a*_2 on |{0,1}> picks up (-1)^2, a*_1 on |{0,2}> picks up (-1)^1.
    CHECK(apply_ladder(create(2), {0b011, 1})->sign == 1);
    CHECK(apply_ladder(create(1), {0b101, 1})->sign == -1);
    CHECK(!apply_ladder(create(0), {0b001, 1}));
    CHECK(!apply_ladder(annihilate(1), {0b001, 1}));
}

TEST_CASE("canonical anticommutation relations")
{
    const auto full = Basis::full(5);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(32, 32);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const Eigen::MatrixXd ai = dense_of(ladder(i, false), full), aj = dense_of(ladder(j, false), full);
            const Eigen::MatrixXd cj = dense_of(ladder(j, true), full);
            CHECK((ai * cj + cj * ai - (i == j ? id : Eigen::MatrixXd::Zero(32, 32))).cwiseAbs().maxCoeff() == 0.0);
            CHECK((ai * aj + aj * ai).cwiseAbs().maxCoeff() == 0.0);
            CHECK((dense_of(ladder(i, true), full) - ai.transpose()).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("hamiltonian structure")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 2);
    const auto v = PotentialSpec::from_entries({{{0, 0, 0}, 0.2}, {{1, 0, 0}, 0.3}, {{-1, 0, 0}, 0.3}});
    const auto b = Basis::sector(m.size(), 3);
    const auto h = assemble_hamiltonian(s, m, v, b);
    CHECK(h.hermiticity_defect() <= 1e-12);
    for (int axis = 0; axis < 3; ++axis)
        CHECK(commutator_defect(h, SparseOperator::assemble(momentum_operator(m, axis), b)) <= 1e-12);
    // particle-number conservation shows up as closure on the full space
    const auto full = Basis::full(7);
    const ModeSet m7(s, 1);
    const auto hf = SparseOperator::assemble(hamiltonian_operator(s, m7, v), full);
    CHECK(commutator_defect(hf, SparseOperator::assemble(number_operator(m7), full)) <= 1e-12);
}

TEST_CASE("v = 0 ground state is the filled sea")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 2);
    const auto b = Basis::sector(m.size(), 7);
    const auto h = assemble_hamiltonian(s, m, {}, b);
    const auto gs = ground_state(h);
    CHECK(gs.energy == doctest::Approx(perturbation::sea_kinetic_energy(s)).epsilon(1e-13));
    CHECK(std::abs(gs.vector[*b.find(m.fermi_mask())]) == doctest::Approx(1.0));
    CHECK(one_rdm_distance(gs.vector, b, m).trace == doctest::Approx(0.0));
}

TEST_CASE("one particle does not feel the interaction")
{
    const auto s = FermiSystem::from_shell(0);
    const ModeSet m(s, 2);
    const auto b = Basis::sector(m.size(), 1);
    const auto w = SparseOperator::assemble(interaction_operator(s, m, PotentialSpec::ball(2, 0.7)), b);
    CHECK(w.max_abs() == 0.0);
    const auto h = assemble_hamiltonian(s, m, PotentialSpec::ball(2, 0.7), b);
    CHECK(max_entry_difference(h, SparseOperator::assemble(kinetic_operator(s, m), b)) == 0.0);
}

TEST_CASE("closed shell: E_N equals hf_energy when M = B")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 1);
    const auto v = PotentialSpec::ball(1, 0.4);
    const auto gs = ground_state(assemble_hamiltonian(s, m, v, Basis::sector(7, 7)));
    CHECK(gs.energy == doctest::Approx(perturbation::hf_energy(s, v)).epsilon(1e-13));
    CHECK_THROWS_AS(require_closed_shell(ModeSet(s, 2), 5), DegeneracyError);
    CHECK_NOTHROW(require_closed_shell(ModeSet(s, 2), 19));
    CHECK_NOTHROW(require_closed_shell(ModeSet(s, 2), 7));
}

TEST_CASE("dense and Lanczos agree")
{
    const auto s = FermiSystem::from_shell(0);
    const ModeSet m(s, 2);
    const auto v = PotentialSpec::ball(2, 0.2);
    const auto block = momentum_block(Basis::sector(m.size(), 5), m, Mode{});
    REQUIRE(block.dimension() > 200);
    const auto h = assemble_hamiltonian(s, m, v, block);
    EigenOptions d, l;
    d.solver = Solver::Dense;
    l.solver = Solver::Lanczos;
    const auto a = ground_state(h, d), b = ground_state(h, l);
    CHECK(std::abs(a.energy - b.energy) <= 1e-8);
    CHECK(b.residual <= 1e-9 * b.norm_estimate);
    // The ground state may be degenerate under the cubic group; compare eigen-residuals instead.
    CHECK((h.apply(b.vector) - a.energy * b.vector).norm() <= 1e-7);
    CHECK(b.vector.norm() == doctest::Approx(1.0));
}

TEST_CASE("particle-hole map")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 1);
    const ParticleHoleMap r(m);
    CHECK(r.apply(0).mask == m.fermi_mask());
    CHECK(r.apply(0).sign == 1);
    const auto full = Basis::full(7);
    const Eigen::MatrixXd rm = r.matrix(full, full);
    CHECK((rm.transpose() * rm - Eigen::MatrixXd::Identity(128, 128)).cwiseAbs().maxCoeff() <= 1e-12);
    for (std::size_t i = 0; i < 7; ++i) {
        const Eigen::MatrixXd lhs = rm.transpose() * dense_of(ladder(i, false), full) * rm;
        CHECK((lhs - dense_of(ladder(i, m.in_ball(i)), full)).cwiseAbs().maxCoeff() == 0.0);
    }
    // The same on a mode set with particles outside the ball.
    const ModeSet m2(FermiSystem::from_shell(0), 1);
    const ParticleHoleMap r2map(m2);
    const auto full2 = Basis::full(7);
    const Eigen::MatrixXd q = r2map.matrix(full2, full2);
    for (std::size_t i = 0; i < 7; ++i) {
        const Eigen::MatrixXd lhs = q.transpose() * dense_of(ladder(i, false), full2) * q;
        CHECK((lhs - dense_of(ladder(i, m2.in_ball(i)), full2)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("blocks")
{
    const auto s = FermiSystem::from_shell(0);
    const ModeSet m(s, 2);
    SUBCASE("v = 0")
    {
        const auto bl = assemble_blocks(s, m, {});
        const auto bal = Basis::balanced(m.size(), m.fermi_mask());
        CHECK(SparseOperator::assemble(bl.x, bal).max_abs() == 0.0);
        CHECK(SparseOperator::assemble(bl.q, bal).max_abs() == 0.0);
        CHECK(bl.dp.empty());
    }
    const auto v = PotentialSpec::from_entries({{{0, 0, 0}, 0.1}, {{1, 0, 0}, 0.3}, {{-1, 0, 0}, 0.3}});
    const auto bl = assemble_blocks(s, m, v);
    const auto bal = Basis::balanced(m.size(), m.fermi_mask());
    const auto h0 = SparseOperator::assemble(bl.h0, bal);
    const auto eig = ground_state(h0, EigenOptions{Solver::Dense});
    CHECK(eig.energy >= -1e-12);
    CHECK(h0.apply(Eigen::VectorXd::Unit(bal.dimension(), *bal.find(0))).norm() == 0.0);
    const auto q2b = SparseOperator::assemble(bl.q2b, bal), q2c = SparseOperator::assemble(bl.q2c, bal);
    CHECK(max_entry_difference(q2b.transpose(), q2c) == 0.0);
    CHECK(max_entry_difference(q2b, SparseOperator::assemble(pair_creation_operator(s, m, v), bal)) == 0.0);
    for (const auto& [p, dp] : bl.dp) {
        const auto minus = std::find_if(bl.dp.begin(), bl.dp.end(), [&](const auto& e) { return e.first == -p; });
        REQUIRE(minus != bl.dp.end());
        CHECK(max_entry_difference(SparseOperator::assemble(dp.adjoint(), bal),
                                   SparseOperator::assemble(minus->second, bal)) == 0.0);
    }
}

TEST_CASE("operator identity")
{
    const auto s = FermiSystem::from_shell(1);
    SUBCASE("v = 0")
    {
        const auto rep = verify_identity(s, ModeSet(s, 1), {});
        CHECK(rep.sector_defect <= 1e-12);
        CHECK(rep.full_defect_counterterm <= 1e-12);
    }
    SUBCASE("M = B, single pair")
    {
        const auto rep = verify_identity(s, ModeSet(s, 1), PotentialSpec::pair({1, 0, 0}, 0.4));
        CHECK(rep.sector_defect <= 1e-10);
        CHECK(rep.full_defect_counterterm <= 1e-10);
        CHECK(rep.full_defect > 1.0);
    }
    SUBCASE("particles outside, full space")
    {
        const auto s0 = FermiSystem::from_shell(0);
        const auto rep = verify_identity(s0, ModeSet(s0, 1),
                                         PotentialSpec::from_entries({{{0, 0, 0}, 0.1}, {{1, 0, 0}, 0.3}, {{-1, 0, 0}, 0.3}}));
        CHECK(rep.sector_defect <= 1e-10);
        CHECK(rep.full_defect_counterterm <= 1e-10);
        CHECK(rep.q_split_defect <= 1e-12);
        CHECK(rep.q1_defect <= 1e-12);
    }
}

TEST_CASE("trial state")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 2);
    SUBCASE("v = 0")
    {
        const auto t = trial_state(s, m, {});
        CHECK(t.normalization == 1.0);
        CHECK(t.psi[*t.sector.find(m.fermi_mask())] == 1.0);
        CHECK(t.psi.norm() == doctest::Approx(1.0));
    }
    const auto v = PotentialSpec::pair({1, 0, 0}, 0.15);
    const auto t = trial_state(s, m, v);
    perturbation::SumOptions o;
    o.outer_shell = 2;
    const auto n = perturbation::trial_normalization(s, v, o);
    CHECK(t.normalization == doctest::Approx(n.m).epsilon(1e-13));
    CHECK(t.psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // N-particle property: psi lives on the N sector by construction, and phi has N_b = N_c.
    for (std::size_t i = 0; i < t.phi.basis.dimension(); ++i)
        if (t.phi.coeffs[i] != 0.0) CHECK(__builtin_popcountll(t.phi.basis[i] & m.fermi_mask()) == __builtin_popcountll(t.phi.basis[i] & ~m.fermi_mask()));
    const auto h = assemble_hamiltonian(s, m, v, t.sector);
    const double et = h.expectation(t.psi);
    CHECK(et >= ground_state(h).energy);
    CHECK(et < perturbation::hf_energy(s, v));
    const auto d = one_rdm_distance(t.psi, t.sector, m);
    CHECK(d.trace >= 0.0);
    CHECK(d.trace <= 7.0);
    CHECK(d.hilbert_schmidt_bound == 2 * d.trace);
}

TEST_CASE("triplet dump round trip")
{
    const auto s = FermiSystem::from_shell(1);
    const ModeSet m(s, 2);
    const auto b = Basis::sector(m.size(), 2);
    const auto h = assemble_hamiltonian(s, m, PotentialSpec::pair({1, 0, 0}, 0.1), b);
    std::stringstream io;
    h.write_triplets(io);
    std::string first;
    std::getline(io, first);
    CHECK(first == "# dimension " + std::to_string(b.dimension()));
    io.seekg(0);
    const auto back = SparseOperator::read_triplets(io);
    CHECK(back.basis_hash() == b.hash());
    CHECK(max_entry_difference(h, back) == 0.0);
    std::istringstream bad("# dimension 3\n0 1\n");
    CHECK_THROWS_AS(SparseOperator::read_triplets(bad), ConfigError);
}
