#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "spl/numeric.hpp"

namespace spl {

/// Point mass; the support must avoid the origin.
struct Atom {
    complex location;
    double mass = 0.0;
};

/// Mass spread uniformly in angle over the circle |z| = radius.
struct UniformCircle {
    double radius = 1.0;
    double mass = 0.0;
};

/// Radial density rho_alpha(r) = (pi/(2 alpha^2)) r^{pi/alpha-2} (1+r^{pi/alpha})^{-2}
/// on the double sector {|Arg z| >= 2 alpha}, scaled by mass_scale.
/// mass_scale = 1 carries total mass (pi - 2 alpha)/alpha.
struct ExtremalTail {
    double alpha = 0.0;
    double mass_scale = 1.0;
};

/// Density with respect to plane Lebesgue measure, interpolated bilinearly
/// in (log r, theta) over a product grid; zero outside the grid.
struct TabulatedDensity {
    std::vector<double> radial_grid;              // strictly increasing, > 0
    std::vector<double> angular_grid;             // strictly increasing, in (-pi, pi]
    std::vector<std::vector<double>> values;      // values[i][j] >= 0 at (r_i, theta_j)

    double value_at(double r, double theta) const;
};

using Component = std::variant<Atom, UniformCircle, ExtremalTail, TabulatedDensity>;

/// The angular distribution function t -> mass of {|Arg z| <= t} on [0, pi]:
/// a step part (atoms) plus a piecewise-linear density part. Nondecreasing,
/// right-continuous, with value total() at t = pi. Integrals of the function
/// are computed in closed form, never by quadrature.
class SectorMassFunction {
public:
    struct Jump {
        double t;
        double mass;
    };
    /// Linear angular density on [lo, hi]: g(lo) = g_lo, g(hi) = g_hi.
    struct Piece {
        double lo, hi, g_lo, g_hi;
    };

    /// Atoms within this distance of the query angle count as inside the
    /// closed sector. Absorbs the rounding of atan2 and of computed roots.
    static constexpr double boundary_tol = 3e-13;

    double operator()(double t) const;
    /// int_0^a m(t) dt, exact per jump/piece.
    double integral(double a) const;
    double total() const { return (*this)(pi); }

    void add_jump(double t, double mass);
    void add_piece(double lo, double hi, double g_lo, double g_hi);
    void finalize();

    std::span<const Jump> jumps() const { return jumps_; }
    std::span<const Piece> pieces() const { return pieces_; }

private:
    std::vector<Jump> jumps_;
    std::vector<Piece> pieces_;
};

/// Immutable planar measure: a finite sum of typed components with no mass
/// at the origin. All queries are pure and safe to call concurrently.
class Measure {
public:
    explicit Measure(std::vector<Component> components);

    const std::vector<Component>& components() const { return components_; }

    double total_mass() const { return total_mass_; }

    /// Mass of the closed double sector {|Arg z| <= t}, t in [0, pi].
    double sector_mass(double t) const;

    const SectorMassFunction& angular_projection() const { return projection_; }

    /// Mass of the one-sided closed angular interval {Arg z in [lo, hi]}.
    double arc_mass(double lo, double hi) const;

    /// Mirror-symmetry about the real axis, tested on a 64-subsector grid.
    bool check_symmetry(double tol) const;
    bool check_symmetry() const { return check_symmetry(default_symmetry_tol()); }
    double default_symmetry_tol() const;

    bool is_atomic() const;
    /// All atom components, flattened.
    std::vector<Atom> atoms() const;

    /// Set when the measure is exactly {atoms at e^{+-i alpha}, mass w each}
    /// + ExtremalTail(alpha, w); such measures have closed-form potentials.
    struct PureExtremal {
        double alpha;
        double scale;
    };
    std::optional<PureExtremal> pure_extremal() const { return pure_extremal_; }

    /// int_{|zeta| <= 1} log|zeta| dmu; the additive constant between the
    /// split-kernel and normalized potentials.
    double inner_log_moment() const { return inner_log_moment_; }

    /// Smallest and largest support radii (density tails clipped at 1e-9 mass).
    std::pair<double, double> support_radius_range() const;

private:
    std::vector<Component> components_;
    SectorMassFunction projection_;
    double total_mass_ = 0.0;
    double inner_log_moment_ = 0.0;
    std::optional<PureExtremal> pure_extremal_;
};

/// Total mass of a single component.
double component_mass(const Component& c);

}  // namespace spl
