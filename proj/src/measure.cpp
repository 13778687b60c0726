#include "spl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "spl/detail/extremal_density.hpp"
#include "spl/quadrature.hpp"

namespace spl {

namespace {

void require(bool cond, const std::string& message) {
    if (!cond) throw std::invalid_argument(message);
}

// ---- exact integrals of bilinear-in-(log r, theta) cells -------------------
//
// With L = log r the plane measure is r dr dtheta = e^{2L} dL dtheta, so the
// mass of one grid cell reduces to one-dimensional exponential moments.

// int_{L0}^{L1} e^{2L} dL
double cell_e0(double L0, double L1) { return 0.5 * (std::exp(2.0 * L1) - std::exp(2.0 * L0)); }

// int_{L0}^{L1} x e^{2L} dL with x = (L - L0)/(L1 - L0)
double cell_ex(double L0, double L1) {
    const double dL = L1 - L0;
    return ((0.5 * dL - 0.25) * std::exp(2.0 * L1) + 0.25 * std::exp(2.0 * L0)) / dL;
}

struct CellRadialIntegrals {
    double at_theta_lo;  // int f(r, theta=p0) r dr over the cell
    double at_theta_hi;  // int f(r, theta=p1) r dr over the cell
};

CellRadialIntegrals cell_radial(const TabulatedDensity& tab, std::size_t i, std::size_t j,
                                double L_lo, double L_hi) {
    const double L0 = std::log(tab.radial_grid[i]);
    const double L1 = std::log(tab.radial_grid[i + 1]);
    const double lo = std::max(L0, L_lo);
    const double hi = std::min(L1, L_hi);
    if (!(lo < hi)) return {0.0, 0.0};

    const double f00 = tab.values[i][j];
    const double f10 = tab.values[i + 1][j];
    const double f01 = tab.values[i][j + 1];
    const double f11 = tab.values[i + 1][j + 1];

    // Shift the x parameterization to the clipped interval.
    const double x_lo = (lo - L0) / (L1 - L0);
    const double x_hi = (hi - L0) / (L1 - L0);
    const double g00 = f00 + (f10 - f00) * x_lo;
    const double g10 = f00 + (f10 - f00) * x_hi;
    const double g01 = f01 + (f11 - f01) * x_lo;
    const double g11 = f01 + (f11 - f01) * x_hi;

    const double e0 = cell_e0(lo, hi);
    const double ex = cell_ex(lo, hi);
    return {g00 * (e0 - ex) + g10 * ex, g01 * (e0 - ex) + g11 * ex};
}

constexpr double kFullRadialRange = 1e6;

// Gauss-Legendre 16 on [-1, 1]; used for the log-weighted tabulated moments.
constexpr double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

double gauss16(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double dx = h * kGlx[k];
        sum += kGlw[k] * (f(c - dx) + f(c + dx));
    }
    return sum * h;
}

}  // namespace

// ---- TabulatedDensity -------------------------------------------------------

double TabulatedDensity::value_at(double r, double theta) const {
    if (r <= 0.0) return 0.0;
    if (r < radial_grid.front() || r > radial_grid.back()) return 0.0;
    if (theta < angular_grid.front() || theta > angular_grid.back()) return 0.0;

    const double L = std::log(r);
    auto ri = std::upper_bound(radial_grid.begin(), radial_grid.end(), r) - radial_grid.begin();
    std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(ri - 1, 0), radial_grid.size() - 2);
    auto ti = std::upper_bound(angular_grid.begin(), angular_grid.end(), theta) - angular_grid.begin();
    std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(ti - 1, 0), angular_grid.size() - 2);

    const double L0 = std::log(radial_grid[i]);
    const double L1 = std::log(radial_grid[i + 1]);
    const double x = (L - L0) / (L1 - L0);
    const double y = (theta - angular_grid[j]) / (angular_grid[j + 1] - angular_grid[j]);
    return values[i][j] * (1 - x) * (1 - y) + values[i + 1][j] * x * (1 - y) +
           values[i][j + 1] * (1 - x) * y + values[i + 1][j + 1] * x * y;
}

// ---- SectorMassFunction -----------------------------------------------------

void SectorMassFunction::add_jump(double t, double mass) {
    if (t < 0.0) t = 0.0;
    if (t > pi) t = pi;
    jumps_.push_back({t, mass});
}

void SectorMassFunction::add_piece(double lo, double hi, double g_lo, double g_hi) {
    if (!(lo < hi)) return;
    pieces_.push_back({lo, hi, g_lo, g_hi});
}

void SectorMassFunction::finalize() {
    std::sort(jumps_.begin(), jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.t < b.t; });
    std::vector<Jump> merged;
    merged.reserve(jumps_.size());
    for (const Jump& j : jumps_) {
        if (!merged.empty() && merged.back().t == j.t)
            merged.back().mass += j.mass;
        else
            merged.push_back(j);
    }
    jumps_ = std::move(merged);
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
}

namespace {

// int_{piece.lo}^{x} g(s) ds for the linear density g of the piece.
double piece_partial(const SectorMassFunction::Piece& p, double x) {
    if (x <= p.lo) return 0.0;
    x = std::min(x, p.hi);
    const double w = x - p.lo;
    const double slope = (p.g_hi - p.g_lo) / (p.hi - p.lo);
    return p.g_lo * w + 0.5 * slope * w * w;
}

// int_{piece.lo}^{min(a, piece.hi)} (a - s) g(s) ds
double piece_weighted(const SectorMassFunction::Piece& p, double a) {
    if (a <= p.lo) return 0.0;
    const double X = std::min(a, p.hi) - p.lo;
    const double slope = (p.g_hi - p.g_lo) / (p.hi - p.lo);
    const double lead = a - p.lo;
    return lead * (p.g_lo * X + 0.5 * slope * X * X) -
           (0.5 * p.g_lo * X * X + slope * X * X * X / 3.0);
}

}  // namespace

double SectorMassFunction::operator()(double t) const {
    if (!(t >= 0.0 && t <= pi))
        throw std::domain_error("SectorMassFunction: t must lie in [0, pi]");
    double m = 0.0;
    for (const Jump& j : jumps_) {
        if (j.t <= t + boundary_tol) m += j.mass;
        else break;
    }
    for (const Piece& p : pieces_) m += piece_partial(p, t);
    return m;
}

double SectorMassFunction::integral(double a) const {
    if (!(a >= 0.0 && a <= pi))
        throw std::domain_error("SectorMassFunction: a must lie in [0, pi]");
    double acc = 0.0;
    for (const Jump& j : jumps_) {
        if (j.t < a) acc += j.mass * (a - j.t);
        else break;
    }
    for (const Piece& p : pieces_) acc += piece_weighted(p, a);
    return acc;
}

// ---- Measure ----------------------------------------------------------------

namespace {

void validate_component(const Component& c) {
    if (const auto* atom = std::get_if<Atom>(&c)) {
        require(std::isfinite(atom->location.real()) && std::isfinite(atom->location.imag()),
                "Atom: location must be finite");
        require(std::abs(atom->location) > 0.0, "Atom: no mass at the origin");
        require(std::isfinite(atom->mass) && atom->mass >= 0.0, "Atom: mass must be >= 0");
    } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
        require(std::isfinite(circle->radius) && circle->radius > 0.0,
                "UniformCircle: radius must be > 0");
        require(std::isfinite(circle->mass) && circle->mass >= 0.0,
                "UniformCircle: mass must be >= 0");
    } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
        require(tail->alpha > 0.0 && tail->alpha < pi / 2, "ExtremalTail: alpha must lie in (0, pi/2)");
        require(std::isfinite(tail->mass_scale) && tail->mass_scale > 0.0,
                "ExtremalTail: mass_scale must be > 0");
    } else if (const auto* tab = std::get_if<TabulatedDensity>(&c)) {
        require(tab->radial_grid.size() >= 2 && tab->angular_grid.size() >= 2,
                "TabulatedDensity: grids need at least two points");
        require(tab->radial_grid.front() > 0.0, "TabulatedDensity: radial grid must be positive");
        for (std::size_t i = 0; i + 1 < tab->radial_grid.size(); ++i)
            require(tab->radial_grid[i] < tab->radial_grid[i + 1],
                    "TabulatedDensity: radial grid must be strictly increasing");
        for (std::size_t j = 0; j + 1 < tab->angular_grid.size(); ++j)
            require(tab->angular_grid[j] < tab->angular_grid[j + 1],
                    "TabulatedDensity: angular grid must be strictly increasing");
        require(tab->angular_grid.front() > -pi && tab->angular_grid.back() <= pi,
                "TabulatedDensity: angular grid must lie in (-pi, pi]");
        require(tab->values.size() == tab->radial_grid.size(),
                "TabulatedDensity: values rows must match radial grid");
        for (const auto& row : tab->values) {
            require(row.size() == tab->angular_grid.size(),
                    "TabulatedDensity: values columns must match angular grid");
            for (double v : row)
                require(std::isfinite(v) && v >= 0.0, "TabulatedDensity: values must be >= 0");
        }
    }
}

double tabulated_mass(const TabulatedDensity& tab) {
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
        for (std::size_t j = 0; j + 1 < tab.angular_grid.size(); ++j) {
            const auto ri = cell_radial(tab, i, j, -kFullRadialRange, kFullRadialRange);
            mass += 0.5 * (tab.angular_grid[j + 1] - tab.angular_grid[j]) *
                    (ri.at_theta_lo + ri.at_theta_hi);
        }
    }
    return mass;
}

// Overlap length of [lo, hi] with the closed set {|theta| >= 2 alpha} in (-pi, pi].
double tail_overlap(double lo, double hi, double alpha) {
    const double s = 2.0 * alpha;
    const double left = std::max(0.0, std::min(hi, -s) - lo);
    const double right = std::max(0.0, hi - std::max(lo, s));
    return left + right;
}

}  // namespace

double component_mass(const Component& c) {
    if (const auto* atom = std::get_if<Atom>(&c)) return atom->mass;
    if (const auto* circle = std::get_if<UniformCircle>(&c)) return circle->mass;
    if (const auto* tail = std::get_if<ExtremalTail>(&c))
        return tail->mass_scale * (pi - 2.0 * tail->alpha) / tail->alpha;
    return tabulated_mass(std::get<TabulatedDensity>(c));
}

Measure::Measure(std::vector<Component> components) : components_(std::move(components)) {
    for (const Component& c : components_) validate_component(c);

    for (const Component& c : components_) {
        total_mass_ += component_mass(c);

        if (const auto* atom = std::get_if<Atom>(&c)) {
            projection_.add_jump(std::fabs(principal_arg(atom->location)), atom->mass);
            const double az = std::abs(atom->location);
            if (az <= 1.0) inner_log_moment_ += atom->mass * std::log(az);
        } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
            const double g = circle->mass / pi;
            projection_.add_piece(0.0, pi, g, g);
            if (circle->radius <= 1.0) inner_log_moment_ += circle->mass * std::log(circle->radius);
        } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
            const double g = tail->mass_scale / tail->alpha;
            projection_.add_piece(2.0 * tail->alpha, pi, g, g);
            const double alpha = tail->alpha;
            inner_log_moment_ += tail->mass_scale * (two_pi - 4.0 * alpha) *
                                 integrate(
                                     [alpha](double r) {
                                         return std::log(r) * r * detail::rho_alpha_density(r, alpha);
                                     },
                                     0.0, 1.0, QuadratureSpec{1e-12, 1e-12, 4000});
        } else {
            const auto& tab = std::get<TabulatedDensity>(c);
            for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
                for (std::size_t j = 0; j + 1 < tab.angular_grid.size(); ++j) {
                    const auto ri = cell_radial(tab, i, j, -kFullRadialRange, kFullRadialRange);
                    const double p0 = tab.angular_grid[j];
                    const double p1 = tab.angular_grid[j + 1];
                    // Fold the (linear in theta) angular density onto [0, pi].
                    const double d0 = ri.at_theta_lo;
                    const double d1 = ri.at_theta_hi;
                    if (p0 >= 0.0) {
                        projection_.add_piece(p0, p1, d0, d1);
                    } else if (p1 <= 0.0) {
                        projection_.add_piece(-p1, -p0, d1, d0);
                    } else {
                        const double dmid = d0 + (d1 - d0) * (0.0 - p0) / (p1 - p0);
                        projection_.add_piece(0.0, -p0, dmid, d0);
                        projection_.add_piece(0.0, p1, dmid, d1);
                    }
                    // log-moment of the part inside the unit disk
                    const double L0 = std::log(tab.radial_grid[i]);
                    const double L1 = std::min(0.0, std::log(tab.radial_grid[i + 1]));
                    if (L0 < L1) {
                        const double f00 = tab.values[i][j], f10 = tab.values[i + 1][j];
                        const double f01 = tab.values[i][j + 1], f11 = tab.values[i + 1][j + 1];
                        const double Lfull = std::log(tab.radial_grid[i + 1]) - L0;
                        auto lo_profile = [&](double L) {
                            const double x = (L - L0) / Lfull;
                            return L * (f00 + (f10 - f00) * x) * std::exp(2.0 * L);
                        };
                        auto hi_profile = [&](double L) {
                            const double x = (L - L0) / Lfull;
                            return L * (f01 + (f11 - f01) * x) * std::exp(2.0 * L);
                        };
                        inner_log_moment_ += 0.5 * (p1 - p0) *
                                             (gauss16(lo_profile, L0, L1) + gauss16(hi_profile, L0, L1));
                    }
                }
            }
        }
    }
    projection_.finalize();

    // Detect the closed-form extremal family: conjugate unit atoms at +-alpha
    // whose mass equals the tail scale.
    if (components_.size() == 3) {
        const ExtremalTail* tail = nullptr;
        std::vector<const Atom*> atoms;
        for (const Component& c : components_) {
            if (const auto* t = std::get_if<ExtremalTail>(&c)) tail = t;
            if (const auto* a = std::get_if<Atom>(&c)) atoms.push_back(a);
        }
        if (tail && atoms.size() == 2) {
            const double a0 = principal_arg(atoms[0]->location);
            const double a1 = principal_arg(atoms[1]->location);
            const bool units = std::fabs(std::abs(atoms[0]->location) - 1.0) < 1e-13 &&
                               std::fabs(std::abs(atoms[1]->location) - 1.0) < 1e-13;
            const bool conj = std::fabs(a0 + a1) < 1e-13 &&
                              std::fabs(std::fabs(a0) - tail->alpha) < 1e-13;
            const bool masses = std::fabs(atoms[0]->mass - tail->mass_scale) < 1e-13 &&
                                std::fabs(atoms[1]->mass - tail->mass_scale) < 1e-13;
            if (units && conj && masses)
                pure_extremal_ = PureExtremal{tail->alpha, tail->mass_scale};
        }
    }
}

double Measure::sector_mass(double t) const {
    if (!(t >= 0.0 && t <= pi)) throw std::domain_error("sector_mass: t must lie in [0, pi]");
    return projection_(t);
}

double Measure::arc_mass(double lo, double hi) const {
    if (!(lo <= hi)) throw std::domain_error("arc_mass: requires lo <= hi");
    double mass = 0.0;
    for (const Component& c : components_) {
        if (const auto* atom = std::get_if<Atom>(&c)) {
            const double a = principal_arg(atom->location);
            if (a >= lo - SectorMassFunction::boundary_tol &&
                a <= hi + SectorMassFunction::boundary_tol)
                mass += atom->mass;
        } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
            mass += circle->mass * (hi - lo) / two_pi;
        } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
            mass += tail_overlap(lo, hi, tail->alpha) * tail->mass_scale / (2.0 * tail->alpha);
        } else {
            const auto& tab = std::get<TabulatedDensity>(c);
            for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
                for (std::size_t j = 0; j + 1 < tab.angular_grid.size(); ++j) {
                    const double p0 = tab.angular_grid[j];
                    const double p1 = tab.angular_grid[j + 1];
                    const double a = std::max(lo, p0);
                    const double b = std::min(hi, p1);
                    if (!(a < b)) continue;
                    const auto ri = cell_radial(tab, i, j, -kFullRadialRange, kFullRadialRange);
                    const double dth = p1 - p0;
                    auto w2 = [&](double th) { return (th - p0) * (th - p0) / (2.0 * dth); };
                    auto w1 = [&](double th) { return (th - p0) - w2(th); };
                    mass += ri.at_theta_lo * (w1(b) - w1(a)) + ri.at_theta_hi * (w2(b) - w2(a));
                }
            }
        }
    }
    return mass;
}

double Measure::default_symmetry_tol() const {
    for (const Component& c : components_)
        if (std::holds_alternative<TabulatedDensity>(c)) return 1e-8;
    return 1e-12;
}

bool Measure::check_symmetry(double tol) const {
    constexpr int kSubsectors = 64;
    for (int k = 0; k < kSubsectors; ++k) {
        const double s = pi * k / kSubsectors;
        const double t = pi * (k + 1) / kSubsectors;
        if (std::fabs(arc_mass(s, t) - arc_mass(-t, -s)) > tol) return false;
    }
    return true;
}

bool Measure::is_atomic() const {
    for (const Component& c : components_)
        if (!std::holds_alternative<Atom>(c)) return false;
    return true;
}

std::vector<Atom> Measure::atoms() const {
    std::vector<Atom> out;
    for (const Component& c : components_)
        if (const auto* atom = std::get_if<Atom>(&c)) out.push_back(*atom);
    return out;
}

std::pair<double, double> Measure::support_radius_range() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    auto admit = [&](double r) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    };
    for (const Component& c : components_) {
        if (const auto* atom = std::get_if<Atom>(&c)) {
            admit(std::abs(atom->location));
        } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
            admit(circle->radius);
        } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
            admit(detail::tail_radial_quantile(1e-9, tail->alpha));
            admit(detail::tail_radial_quantile(1.0 - 1e-9, tail->alpha));
        } else {
            const auto& tab = std::get<TabulatedDensity>(c);
            admit(tab.radial_grid.front());
            admit(tab.radial_grid.back());
        }
    }
    if (!(lo <= hi)) return {1.0, 1.0};
    return {lo, hi};
}

}  // namespace spl
