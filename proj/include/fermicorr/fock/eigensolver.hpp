#pragma once

#include "fermicorr/fock/sparse.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace fermicorr::fock {

inline constexpr std::size_t kDenseCrossover = 4096;

enum class Solver { Auto, Dense, Lanczos };

struct EigenOptions {
    Solver solver = Solver::Auto;
    /// Convergence: ||H v - E v|| <= tolerance * ||H||_est.
    double tolerance = 1e-9;
    std::size_t krylov_dimension = 120;
    std::size_t max_restarts = 40;
    std::uint64_t seed = 12345;
};

struct GroundState {
    double energy = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;   ///< ||H v - E v||
    double norm_estimate = 0.0;
    std::string method;
    std::size_t iterations = 0;
};

/// Lowest eigenpair of a symmetric operator.  Dense solver up to the
/// crossover dimension, Lanczos with full reorthogonalization above it,
/// restarted from the current Ritz vector.  ConvergenceError carries the achieved residual.
GroundState ground_state(const SparseOperator& h, const EigenOptions& opts = {});

} // namespace fermicorr::fock
