#pragma once

#include "fermicorr/fock/hamiltonian.hpp"

#include <Eigen/Dense>

namespace fermicorr::fock {

/// Coefficients on the balanced particle-hole basis (equal numbers of
/// particles outside and holes inside the ball).
struct ExcitationVector {
    Basis basis;
    Eigen::VectorXd coeffs;
};

struct TrialState {
    ExcitationVector phi;      ///< (Omega - H0^{-1} F* Omega) / M
    ExcitationVector chi;      ///< H0^{-1} F* Omega
    Basis sector;              ///< N-particle basis of psi
    Eigen::VectorXd psi;       ///< R phi
    double chi_norm2 = 0.0;    ///< ||H0^{-1} F* Omega||^2
    double normalization = 1.0; ///< M = sqrt(1 + chi_norm2)
};

/// F* Omega on the balanced basis.
ExcitationVector pair_excitation(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);

/// Componentwise division by the H0 eigenvalue; the vacuum component (and
/// anything in the kernel of H0) is mapped to zero.
ExcitationVector apply_h0_inverse(const FermiSystem& system, const ModeSet& modes, const ExcitationVector& x);

TrialState trial_state(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);

struct RdmDistance {
    double trace = 0.0;                   ///< tr gamma (1 - omega) = N - sum_{k in B} <a*_k a_k>
    double hilbert_schmidt_bound = 0.0;   ///< 2 tr gamma (1 - omega)
};

/// For a normalized N-particle vector on `sector`.
RdmDistance one_rdm_distance(const Eigen::VectorXd& psi, const Basis& sector, const ModeSet& modes);

} // namespace fermicorr::fock
