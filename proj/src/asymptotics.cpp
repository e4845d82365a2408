#include "fermicorr/asymptotics.hpp"

#include "fermicorr/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace fermicorr::perturbation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kTwoPiCubed = kTwoPi * kTwoPi * kTwoPi;

double xy_closed_form(double a)
{
    const double a3 = a * a * a;
    double value = a / 6.0 + 2.0 / 3.0;
    if (a > 0.0) value += a3 / 6.0 * std::log(a);
    value += (-a3 / 3.0 + a + 2.0 / 3.0) * std::log1p(a);
    value += (a3 / 6.0 - a - 2.0 / 3.0) * std::log(a + 2.0);
    return value;
}

double xy_nested(double a)
{
    using boost::math::quadrature::gauss_kronrod;
    auto inner = [a](double x) {
        auto f = [a, x](double y) { return x * y / (a + x + y); };
        return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-14);
    };
    return gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 15, 1e-14);
}

double xy_duffy(double a)
{
    // Triangle y <= x with y = x u; the other triangle is its mirror image.
    // Integrand x^3 u / (a + x (1 + u)); x is split geometrically toward 0
    // so the a -> 0 corner is resolved.
    using Rule = boost::math::quadrature::gauss<double, 30>;
    auto in_u = [a](double x) {
        return Rule::integrate([a, x](double u) { return x * x * x * u / (a + x * (1.0 + u)); }, 0.0, 1.0);
    };
    double total = 0.0;
    double hi = 1.0;
    for (int j = 0; j < 40; ++j) {
        const double lo = hi / 2.0;
        total += Rule::integrate(in_u, lo, hi);
        hi = lo;
    }
    total += Rule::integrate(in_u, 0.0, hi);
    return 2.0 * total;
}

double physical_norm(const lattice::Mode& p)
{
    return kTwoPi * std::sqrt(static_cast<double>(p.norm2()));
}

} // namespace

double correlation_constant()
{
    return std::numbers::pi / 2.0 * (1.0 - std::numbers::ln2);
}

double asymptotic_c2(const PotentialSpec& v, double epsilon)
{
    return -epsilon * kTwoPiCubed * correlation_constant() * v.physical_momentum_weight();
}

double asymptotic_c2_lattice(const PotentialSpec& v, double epsilon)
{
    return asymptotic_c2(v, epsilon) / (kTwoPiCubed * kTwoPiCubed);
}

double xy_integral(double a, XyScheme scheme)
{
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("xy_integral requires finite a >= 0");
    switch (scheme) {
    case XyScheme::ClosedForm: return xy_closed_form(a);
    case XyScheme::NestedGaussKronrod: return xy_nested(a);
    case XyScheme::Duffy: return xy_duffy(a);
    case XyScheme::Auto: break;
    }
    // The closed form cancels like a^4 * 1e-16 relative; switch before that bites.
    return a <= 4.0 ? xy_closed_form(a) : xy_nested(a);
}

double limiting_imu_integral(const lattice::FermiSystem& system, const lattice::Mode& p)
{
    if (p.is_zero()) throw DomainError("limiting_imu_integral requires p != 0");
    const double mu = system.mu();
    const double b = system.epsilon() * physical_norm(p);
    const double c = 2.0 * std::sqrt(mu);
    auto f = [b, c](double xi) { return std::sin(xi) * std::cos(xi) / (b + c * std::cos(xi)); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2.0, 20, 1e-14);
    return kTwoPi * mu * integral;
}

double limiting_imu_integral_exact(const lattice::FermiSystem& system, const lattice::Mode& p)
{
    if (p.is_zero()) throw DomainError("limiting_imu_integral requires p != 0");
    const double mu = system.mu();
    const double b = system.epsilon() * physical_norm(p);
    const double c = 2.0 * std::sqrt(mu);
    // u = cos(xi): int_0^1 u / (b + c u) du
    return kTwoPi * mu * (1.0 / c - b / (c * c) * std::log1p(c / b));
}

double limiting_imu_integral_lattice(const lattice::FermiSystem& system, const lattice::Mode& p)
{
    return limiting_imu_integral(system, p) / kTwoPiCubed;
}

} // namespace fermicorr::perturbation
