#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fermicorr::lattice {

/// Integer lattice coordinates n of a plane-wave mode; the physical momentum
/// is k = 2*pi*n in a box of side 1.  All set-membership decisions are made
/// on these integers.
struct Mode {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    constexpr std::int64_t norm2() const noexcept { return x * x + y * y + z * z; }
    constexpr std::int64_t dot(const Mode& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
    constexpr bool is_zero() const noexcept { return x == 0 && y == 0 && z == 0; }

    friend constexpr Mode operator+(const Mode& a, const Mode& b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Mode operator-(const Mode& a, const Mode& b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Mode operator-(const Mode& a) noexcept { return {-a.x, -a.y, -a.z}; }
    friend constexpr auto operator<=>(const Mode&, const Mode&) = default;
};

std::string to_string(const Mode& m);

/// Chemical potential fixed by (4 pi / 3) (mu / 4 pi^2)^{3/2} = 1, so that
/// N ~ eps^{-3}.
double normalized_mu();

/// Integer square root: the largest r with r*r <= n (n >= 0).
std::int64_t isqrt(std::int64_t n);

/// Default cap on the number of modes materialized by enumerate_ball.
inline constexpr std::size_t kDefaultBallCapacity = std::size_t{1} << 24;

/// Fermi ball B = {n : |n|^2 <= S} together with the semiclassical
/// parameters.  Immutable.
///
/// The Fermi level sits at |n|^2 = r2 (lattice units squared) with
/// S = floor(r2); the kinetic unit c = eps^2 (2 pi)^2 converts |n|^2 to
/// energy, and mu = c * r2.
class FermiSystem {
public:
    /// Ball of shell threshold S with the Fermi level at r2 = S + offset,
    /// offset in [0, 1).  offset = 1/2 puts the level midway between the
    /// last occupied and the first empty shell; offset = 0 puts it exactly
    /// on the last occupied shell.  eps is back-solved from mu.
    static FermiSystem from_shell(std::int64_t shell, double offset = 0.5,
                                  double mu = normalized_mu());

    /// Ball determined by eps and mu: S = floor(mu / ((2 pi)^2 eps^2)).
    static FermiSystem from_epsilon(double epsilon, double mu = normalized_mu());

    double epsilon() const noexcept { return epsilon_; }
    double mu() const noexcept { return mu_; }
    std::int64_t shell() const noexcept { return shell_; }
    std::int64_t particle_number() const noexcept { return n_; }
    double fermi_radius2() const noexcept { return radius2_; }
    double kinetic_unit() const noexcept { return unit_; }

    bool contains(const Mode& n) const noexcept { return n.norm2() <= shell_; }
    double kinetic(const Mode& n) const noexcept { return unit_ * static_cast<double>(n.norm2()); }
    /// e(k) = |eps^2 |k|^2 - mu|.
    double dispersion(const Mode& n) const noexcept;

    /// e(k+p) + e(k) for k in B and k+p outside B, from the identity
    /// eps^2 (|p|^2 + 2 k.p) evaluated on integers.
    double pair_energy(const Mode& k, const Mode& p) const noexcept
    {
        return unit_ * static_cast<double>(p.norm2() + 2 * k.dot(p));
    }

    std::vector<Mode> ball(std::size_t capacity = kDefaultBallCapacity) const;

private:
    FermiSystem(double epsilon, double mu, std::int64_t shell, double radius2);

    double epsilon_;
    double mu_;
    std::int64_t shell_;
    std::int64_t n_;
    double radius2_;
    double unit_;
};

struct ShellCount {
    double eta = 0.0;
    std::int64_t count = 0;
    double fraction = 0.0;
};

/// All n with |n|^2 <= S in lexicographic order.  Throws CapacityError when
/// the result would hold more than `capacity` modes.
std::vector<Mode> enumerate_ball(std::int64_t shell, std::size_t capacity = kDefaultBallCapacity);

/// |{n in Z^3 : |n|^2 <= S}|, by column counting in O(S).
std::int64_t count_ball(std::int64_t shell);

/// Cumulative table t[S] = count_ball(S) for 0 <= S <= max_shell.
std::vector<std::int64_t> count_ball_table(std::int64_t max_shell);

/// E_3(R) = count_ball(floor(R^2)) - (4 pi / 3) R^3.
double gauss_error(double radius);

/// Exact number of modes of Z^3 with e(k) <= eta.
ShellCount shell_count(const FermiSystem& system, double eta);

/// Visits every k in B with k+p outside B, in lexicographic order.  With
/// `outer_shell` set, k+p is additionally restricted to |k+p|^2 <= outer.
/// Cost is O(columns + visits), not O(|B|).
void for_each_transfer(const FermiSystem& system, const Mode& p,
                       std::optional<std::int64_t> outer_shell,
                       const std::function<void(const Mode&)>& visit);

/// Number of k in B with k+p outside B, grouped by the integer k.p.
/// Sorted by k.p; zero-count entries omitted.
std::vector<std::pair<std::int64_t, std::int64_t>>
transfer_dot_counts(const FermiSystem& system, const Mode& p,
                    std::optional<std::int64_t> outer_shell = std::nullopt);

/// I_mu(p) = (1/N) sum_{k in B, k+p not in B} 1 / (e(k+p) + e(k)).
/// Returns 0 for p = 0 (empty admissible set).
double i_mu(const FermiSystem& system, const Mode& p);

/// All p != 0 with |p|^2 <= max_norm2 and x >= y >= z >= 0: one
/// representative per orbit of the cubic group acting on the ball.
std::vector<Mode> cubic_orbit_representatives(std::int64_t max_norm2);

} // namespace fermicorr::lattice
