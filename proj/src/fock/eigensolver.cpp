#include "fermicorr/fock/eigensolver.hpp"

#include "fermicorr/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace fermicorr::fock {

namespace {

// Fixes the arbitrary eigenvector sign: largest component positive.
void normalize_sign(Eigen::VectorXd& v)
{
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
}

GroundState dense(const SparseOperator& h, double norm)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense());
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", INFINITY);
    GroundState g;
    g.energy = es.eigenvalues()[0];
    g.vector = es.eigenvectors().col(0);
    normalize_sign(g.vector);
    g.residual = (h.apply(g.vector) - g.energy * g.vector).norm();
    g.norm_estimate = norm;
    g.method = "dense";
    return g;
}

GroundState lanczos(const SparseOperator& h, double norm, const EigenOptions& opts)
{
    const auto n = static_cast<Eigen::Index>(h.dimension());
    const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(opts.krylov_dimension, h.dimension()));

    // Random start with extra weight on the lowest diagonal state.
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start[i] = unif(rng);
    {
        Eigen::Index best = 0;
        double best_value = INFINITY;
        const auto& off = h.row_offsets();
        for (Eigen::Index i = 0; i < n; ++i)
            for (std::size_t e = off[i]; e < off[i + 1]; ++e)
                if (h.columns()[e] == static_cast<std::size_t>(i) && h.values()[e] < best_value) {
                    best_value = h.values()[e];
                    best = i;
                }
        start /= start.norm();
        start[best] += 1.0;
    }
    start /= start.norm();

    GroundState g;
    g.method = "lanczos";
    g.norm_estimate = norm;
    Eigen::MatrixXd V(n, m + 1);
    for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
        V.col(0) = start;
        std::vector<double> alpha, beta;
        Eigen::Index steps = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            Eigen::VectorXd w = h.apply(V.col(j));
            ++g.iterations;
            const double a = V.col(j).dot(w);
            alpha.push_back(a);
            // Full reorthogonalization, applied twice for stability.
            for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
            const double b = w.norm();
            steps = j + 1;
            if (b <= 1e-14 * std::max(norm, 1.0) || j + 1 == m) break;
            beta.push_back(b);
            V.col(j + 1) = w / b;
        }
        Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
        Eigen::VectorXd e(std::max<Eigen::Index>(steps - 1, 0));
        for (Eigen::Index i = 0; i + 1 < steps; ++i) e[i] = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e);
        const double theta = es.eigenvalues()[0];
        Eigen::VectorXd x = V.leftCols(steps) * es.eigenvectors().col(0);
        x /= x.norm();
        const double res = (h.apply(x) - theta * x).norm();
        g.energy = theta;
        g.vector = x;
        g.residual = res;
        if (res <= opts.tolerance * norm) {
            normalize_sign(g.vector);
            return g;
        }
        start = x;
    }
    throw ConvergenceError("Lanczos did not converge: residual " + std::to_string(g.residual) +
                               " after " + std::to_string(g.iterations) + " matvecs",
                           g.residual);
}

} // namespace

GroundState ground_state(const SparseOperator& h, const EigenOptions& opts)
{
    if (h.dimension() == 0) throw DomainError("ground_state on an empty sector");
    const double norm = std::max(h.norm_bound(), 1e-300);
    const bool use_dense =
        opts.solver == Solver::Dense || (opts.solver == Solver::Auto && h.dimension() <= kDenseCrossover);
    GroundState g = use_dense ? dense(h, norm) : lanczos(h, norm, opts);
    if (use_dense && g.residual > opts.tolerance * norm)
        throw ConvergenceError("dense eigenpair residual too large", g.residual);
    return g;
}

} // namespace fermicorr::fock
