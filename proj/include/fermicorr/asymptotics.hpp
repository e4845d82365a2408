#pragma once

#include "fermicorr/lattice.hpp"
#include "fermicorr/potential.hpp"

namespace fermicorr::perturbation {

/// (pi/2)(1 - log 2), the universal constant of the eps -> 0 limit.
double correlation_constant();

/// Closed-form leading term as printed:
///   -eps (2 pi)^3 (pi/2)(1 - log 2) sum_p |2 pi p| v(p)^2.
double asymptotic_c2(const PotentialSpec& v, double epsilon);

/// The same leading term in the normalization of the lattice sums
/// (box of side 1, coupling 1/N), which differs from the printed formula by
/// a factor (2 pi)^6.  This is the value c2_total approaches.
double asymptotic_c2_lattice(const PotentialSpec& v, double epsilon);

enum class XyScheme {
    Auto,              ///< closed form for a <= 4, nested quadrature above
    ClosedForm,
    NestedGaussKronrod,
    Duffy              ///< y = x u on each triangle, tensor Gauss-Legendre
};

/// int_0^1 int_0^1 x y / (a + x + y) dx dy for a >= 0.
double xy_integral(double a, XyScheme scheme = XyScheme::Auto);

/// 2 pi mu int_0^{pi/2} sin(xi) cos(xi) / (eps |p| + 2 sqrt(mu) cos(xi)) dxi with
/// |p| = 2 pi |p_n|, by adaptive Gauss-Kronrod.  Rejects p = 0.
double limiting_imu_integral(const lattice::FermiSystem& system, const lattice::Mode& p);

/// Closed form of the same integral, used as a cross-check.
double limiting_imu_integral_exact(const lattice::FermiSystem& system, const lattice::Mode& p);

/// limiting_imu_integral / (2 pi)^3: the normalization in which i_mu
/// converges.
double limiting_imu_integral_lattice(const lattice::FermiSystem& system, const lattice::Mode& p);

} // namespace fermicorr::perturbation
