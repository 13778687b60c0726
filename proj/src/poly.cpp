#include "spl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "spl/errors.hpp"

namespace spl {

namespace {

constexpr int kMaxDegree = 500;
constexpr int kMaxIterations = 400;
// golden-angle offset of the starting circle; breaks mirror symmetry so the
// simultaneous iteration cannot stall on a symmetric configuration
constexpr double kGoldenAngle = 2.399963229728653;

}  // namespace

PositivePolynomial::PositivePolynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() < 2)
        throw std::invalid_argument("PositivePolynomial: degree must be >= 1");
    if (coefficients_.size() > kMaxDegree + 1)
        throw std::invalid_argument("PositivePolynomial: degree capped at 500");
    for (double c : coefficients_) {
        if (!std::isfinite(c) || c < 0.0)
            throw std::invalid_argument("PositivePolynomial: coefficients must be finite and >= 0");
    }
    if (!(coefficients_.front() > 0.0))
        throw std::invalid_argument("PositivePolynomial: constant term must be > 0");
    if (!(coefficients_.back() > 0.0))
        throw std::invalid_argument("PositivePolynomial: leading term must be > 0");
}

complex PositivePolynomial::eval(complex z) const {
    complex p(0.0, 0.0);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) p = p * z + *it;
    return p;
}

void PositivePolynomial::eval_with_derivative(complex z, complex& p, complex& dp) const {
    p = complex(0.0, 0.0);
    dp = complex(0.0, 0.0);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

double PositivePolynomial::coefficient_scale(double r) const {
    double scale = 0.0;
    double rk = 1.0;
    for (double c : coefficients_) {
        scale += c * rk;
        rk *= r;
    }
    return scale;
}

RootSet find_roots(const PositivePolynomial& p, double tol) {
    const int d = p.degree();
    const double eps = std::numeric_limits<double>::epsilon();

    // starting circle at the coefficient-balance radius
    const double r0 = std::pow(p.coefficients().front() / p.coefficients().back(), 1.0 / d);
    std::vector<complex> z(d);
    for (int k = 0; k < d; ++k)
        z[k] = std::polar(r0, two_pi * k / d + kGoldenAngle);

    std::vector<bool> frozen(d, false);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool all_frozen = true;
        for (int i = 0; i < d; ++i) {
            if (frozen[i]) continue;
            complex pv, dpv;
            p.eval_with_derivative(z[i], pv, dpv);
            const double scale = p.coefficient_scale(std::abs(z[i]));
            if (std::abs(pv) <= 8.0 * eps * scale) {
                frozen[i] = true;
                continue;
            }
            all_frozen = false;
            complex newton = (dpv != complex(0.0, 0.0)) ? pv / dpv
                                                        : complex(eps * (1.0 + std::abs(z[i])), 0.0);
            complex repulsion(0.0, 0.0);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const complex diff = z[i] - z[j];
                if (diff != complex(0.0, 0.0)) repulsion += 1.0 / diff;
            }
            const complex denom = 1.0 - newton * repulsion;
            complex step = (denom != complex(0.0, 0.0)) ? newton / denom : newton;
            z[i] -= step;
            if (std::abs(step) <= 4.0 * eps * (1.0 + std::abs(z[i]))) frozen[i] = true;
        }
        if (all_frozen) break;
    }

    // Newton polishing against the original polynomial
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < 3; ++k) {
            complex pv, dpv;
            p.eval_with_derivative(z[i], pv, dpv);
            if (dpv == complex(0.0, 0.0)) break;
            const complex step = pv / dpv;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z[i]))) break;  // divergent polish
            z[i] -= step;
        }
    }

    // cluster roots into multiplicities
    const double cluster_radius = std::max(1e-7, std::sqrt(std::max(tol, 0.0)));
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
            if (std::abs(z[i] - z[j]) <= cluster_radius * scale) parent[find(i)] = find(j);
        }
    }
    std::vector<complex> centers;
    std::vector<int> mult;
    std::vector<int> cluster_of(d, -1);
    for (int i = 0; i < d; ++i) {
        const int root_id = find(i);
        int c = cluster_of[root_id];
        if (c < 0) {
            c = static_cast<int>(centers.size());
            cluster_of[root_id] = c;
            centers.push_back(complex(0.0, 0.0));
            mult.push_back(0);
        }
        centers[c] += z[i];
        mult[c] += 1;
    }
    for (std::size_t c = 0; c < centers.size(); ++c) centers[c] /= static_cast<double>(mult[c]);

    // real-axis snap, then exact conjugate pairing
    for (complex& w : centers)
        if (std::fabs(w.imag()) <= 1e-8 * (1.0 + std::abs(w))) w = complex(w.real(), 0.0);
    std::vector<bool> paired(centers.size(), false);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (paired[i] || centers[i].imag() <= 0.0) continue;
        std::size_t best = centers.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centers.size(); ++j) {
            if (paired[j] || centers[j].imag() >= 0.0) continue;
            const double dist = std::abs(std::conj(centers[j]) - centers[i]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best < centers.size() && best_dist <= cluster_radius * (1.0 + std::abs(centers[i]))) {
            const complex w = 0.5 * (centers[i] + std::conj(centers[best]));
            centers[i] = w;
            centers[best] = std::conj(w);
            paired[i] = paired[best] = true;
        }
    }

    RootSet out;
    out.roots.reserve(centers.size());
    double residual = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        out.roots.emplace_back(centers[c], mult[c]);
        residual = std::max(residual,
                            std::abs(p.eval(centers[c])) / p.coefficient_scale(std::abs(centers[c])));
    }
    out.residual_bound = residual;
    if (residual > tol)
        throw NonConvergence("find_roots: residual " + std::to_string(residual) +
                             " above tolerance " + std::to_string(tol));
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return out;
}

Measure empirical_measure(const PositivePolynomial& p) {
    const RootSet roots = find_roots(p);
    const double d = p.degree();
    std::vector<Component> comps;
    comps.reserve(roots.roots.size());
    for (const auto& [location, multiplicity] : roots.roots)
        comps.push_back(Atom{location, multiplicity / d});
    return Measure(std::move(comps));
}

bool check_modulus_bound(const PositivePolynomial& p, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("check_modulus_bound: sample_count >= 1");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> log_radius(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int k = 0; k < sample_count; ++k) {
        const double r = std::exp(log_radius(gen));
        const complex z = std::polar(r, angle(gen));
        if (std::abs(p.eval(z)) > p.coefficient_scale(r) * (1.0 + 1e-14)) return false;
    }
    return true;
}

PositivePolynomial make_family(PolyFamily kind, int d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("make_family: degree >= 1");
    std::vector<double> coeffs(static_cast<std::size_t>(d) + 1, 0.0);
    switch (kind) {
        case PolyFamily::binomial_d:
            coeffs.front() = 1.0;
            coeffs.back() = 1.0;
            break;
        case PolyFamily::random_loguniform: {
            std::mt19937_64 gen(seed);
            std::uniform_real_distribution<double> exponent(-3.0, 3.0);
            for (double& c : coeffs) c = std::exp(exponent(gen));
            break;
        }
    }
    return PositivePolynomial(std::move(coeffs));
}

}  // namespace spl
