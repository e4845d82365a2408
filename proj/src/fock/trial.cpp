#include "fermicorr/fock/trial.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/summation.hpp"

#include <cmath>

namespace fermicorr::fock {

ExcitationVector pair_excitation(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    Basis basis = Basis::balanced(modes.size(), modes.fermi_mask());
    Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(basis.dimension());
    vacuum[*basis.find(0)] = 1.0;
    Eigen::VectorXd f = apply(pair_creation_operator(system, modes, v), basis, vacuum);
    return {std::move(basis), std::move(f)};
}

ExcitationVector apply_h0_inverse(const FermiSystem& system, const ModeSet& modes, const ExcitationVector& x)
{
    ExcitationVector out{x.basis, Eigen::VectorXd::Zero(x.coeffs.size())};
    for (std::size_t i = 0; i < x.basis.dimension(); ++i) {
        if (x.coeffs[i] == 0.0) continue;
        double e = 0.0;
        for (std::size_t j = 0; j < modes.size(); ++j)
            if ((x.basis[i] >> j) & 1u) e += system.dispersion(modes[j]);
        if (e > 0.0) out.coeffs[i] = x.coeffs[i] / e;
    }
    return out;
}

TrialState trial_state(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v)
{
    const ExcitationVector f = pair_excitation(system, modes, v);
    TrialState t{f, apply_h0_inverse(system, modes, f),
                 Basis::sector(modes.size(), static_cast<std::size_t>(system.particle_number())), {}, 0.0, 1.0};
    CompensatedSum n2;
    for (Eigen::Index i = 0; i < t.chi.coeffs.size(); ++i) n2 += t.chi.coeffs[i] * t.chi.coeffs[i];
    t.chi_norm2 = n2.value();
    t.normalization = std::sqrt(1.0 + t.chi_norm2);

    t.phi.coeffs = -t.chi.coeffs;
    t.phi.coeffs[*t.phi.basis.find(0)] += 1.0;
    t.phi.coeffs /= t.normalization;
    t.psi = ParticleHoleMap(modes).map_vector(t.phi.coeffs, t.phi.basis, t.sector);
    return t;
}

RdmDistance one_rdm_distance(const Eigen::VectorXd& psi, const Basis& sector, const ModeSet& modes)
{
    if (static_cast<std::size_t>(psi.size()) != sector.dimension()) throw DomainError("vector does not match basis");
    const Mask outside = ~modes.fermi_mask();
    CompensatedSum tr;
    // N - sum_{k in B} <n_k> = sum_x |psi_x|^2 #(occupied modes outside B)
    for (std::size_t i = 0; i < sector.dimension(); ++i)
        tr += psi[i] * psi[i] * __builtin_popcountll(sector[i] & outside);
    RdmDistance d;
    d.trace = tr.value();
    d.hilbert_schmidt_bound = 2.0 * d.trace;
    return d;
}

} // namespace fermicorr::fock
