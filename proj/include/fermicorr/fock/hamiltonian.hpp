#pragma once

#include "fermicorr/fock/basis.hpp"
#include "fermicorr/fock/operators.hpp"
#include "fermicorr/fock/sparse.hpp"
#include "fermicorr/potential.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fermicorr::fock {

using perturbation::PotentialSpec;

/// sum_{k in M} a*_k a_k
OperatorSum number_operator(const ModeSet& modes);
/// Component `axis` (0, 1, 2) of sum_k n_k a*_k a_k.
OperatorSum momentum_operator(const ModeSet& modes, int axis);
/// sum_{k in M} eps^2 |k|^2 a*_k a_k
OperatorSum kinetic_operator(const FermiSystem& system, const ModeSet& modes);
/// (1/2N) sum_{p,k,k'} v(p) a*_{k+p} a*_{k'-p} a_{k'} a_k with every mode in M.
OperatorSum interaction_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);
OperatorSum hamiltonian_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);

SparseOperator assemble_hamiltonian(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v,
                                    const Basis& basis);

/// The particle-hole unitary R.  With x = {j1 < ... < jm},
///   R |x> = o_{j1} ... o_{jm} a*_{b1} ... a*_{bN} Omega,
/// o_j = a*_j outside the ball and a_j inside, so R Omega is the filled sea
/// with coefficient +1 and R* a_k R = b_k + c*_k holds without extra signs.
class ParticleHoleMap {
public:
    explicit ParticleHoleMap(const ModeSet& modes);

    Mask fermi_mask() const noexcept { return fermi_; }
    /// R |mask> = sign |mask xor fermi_mask>
    Transition apply(Mask mask) const noexcept;

    /// R as a matrix from `from` to `to` (rectangular in general, returned
    /// dense; intended for small spaces).
    Eigen::MatrixXd matrix(const Basis& from, const Basis& to) const;
    /// R* A R where A acts on `image` and the result acts on `preimage`.
    SparseOperator conjugate(const SparseOperator& a, const Basis& image, const Basis& preimage) const;
    /// R v: coefficients on `preimage` mapped to `image`.
    Eigen::VectorXd map_vector(const Eigen::VectorXd& v, const Basis& preimage, const Basis& image) const;

private:
    Mask fermi_;
    std::size_t modes_;
};

/// Operator blocks of the particle-hole picture, b_k = a_k (k in M \ B),
/// c_k = a_k (k in B).  Every block is an OperatorSum over the mode set.
struct Blocks {
    double e_hf = 0.0;
    OperatorSum h0;          ///< sum e(k) (b*b + c*c)
    OperatorSum x;           ///< exchange quadratic term
    OperatorSum d;           ///< v(0) sum (b*b - c*c)
    OperatorSum counterterm; ///< (mu + v(0)) (N_b - N_c), vanishes on the N-particle image
    OperatorSum q;           ///< all quartic terms in b, c
    OperatorSum q1, q1a, q2a, q2b, q2c, q3;
    std::vector<std::pair<Mode, OperatorSum>> dp; ///< D_p for p in supp(v)
    OperatorSum dstar_d;     ///< (1/2N) sum v(p) D*_p D_p
};

Blocks assemble_blocks(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);

/// F* = (1/2N) sum v(p) b*_{k+p} b*_{k'-p} c*_{k'} c*_k with all modes in M.
OperatorSum pair_creation_operator(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v);

struct IdentityReport {
    /// max |R*HR - (E_HF + H0 + X + Q)| on the preimage of the N-particle sector.
    double sector_defect = 0.0;
    /// Same comparison on the whole Fock space, without the counterterm
    /// (nonzero in general; reported only).  NaN when the space is too large.
    double full_defect = 0.0;
    /// Whole Fock space including the counterterm (mu + v(0))(N_b - N_c).
    double full_defect_counterterm = 0.0;
    double q_split_defect = 0.0; ///< |Q - (Q1 + Q2 + Q3)|
    double q1_defect = 0.0;      ///< |Q1 - (1/2N) sum v D*D - Q1a|
    std::size_t sector_dimension = 0;
    std::size_t full_dimension = 0;
};

/// `full_mode_limit`: the whole-space comparison is skipped above this many modes.
IdentityReport verify_identity(const FermiSystem& system, const ModeSet& modes, const PotentialSpec& v,
                               std::size_t full_mode_limit = 12);

} // namespace fermicorr::fock
