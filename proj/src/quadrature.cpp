#include "spl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace spl {

namespace {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1] (positive half).
// Odd-index abscissae carry the embedded Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double lo, hi;
    double estimate;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const Integrand& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    bool finite = std::isfinite(fc);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[7 + j] = f2;
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * (f1 + f2);
    }

    Segment seg{lo, hi, 0.0, 0.0};
    if (!finite) {
        // Singularity hit a node; force a split around it.
        seg.estimate = 0.0;
        seg.error = std::numeric_limits<double>::infinity();
        return seg;
    }

    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[7 + j] - mean));
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);

    seg.estimate = resk * half;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    seg.error = err;
    return seg;
}

bool negligible_width(double lo, double hi) {
    const double eps = std::numeric_limits<double>::epsilon();
    return (hi - lo) <= 8.0 * eps * std::max({1.0, std::fabs(lo), std::fabs(hi)});
}

}  // namespace

double integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec) {
    if (!(lo < hi)) throw std::invalid_argument("integrate: requires lo < hi");
    if (!(spec.abs_tol > 0.0) || spec.rel_tol < 0.0 || spec.max_subdivisions < 1)
        throw std::invalid_argument("integrate: invalid QuadratureSpec");

    std::priority_queue<Segment> queue;
    Segment first = evaluate(f, lo, hi);
    double total_estimate = first.estimate;
    double total_error = first.error;
    queue.push(first);

    for (int splits = 0; splits < spec.max_subdivisions; ++splits) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_estimate));
        if (total_error <= tol) return total_estimate;
        if (queue.empty()) break;

        Segment worst = queue.top();
        queue.pop();
        total_estimate -= worst.estimate;
        total_error -= worst.error;

        if (negligible_width(worst.lo, worst.hi)) {
            // Keep the point estimate of an interval too thin to refine; an
            // integrable singularity contributes nothing at this width.
            if (std::isfinite(worst.estimate)) total_estimate += worst.estimate;
            continue;
        }

        const double mid = 0.5 * (worst.lo + worst.hi);
        Segment left = evaluate(f, worst.lo, mid);
        Segment right = evaluate(f, mid, worst.hi);
        total_estimate += left.estimate + right.estimate;
        total_error += left.error + right.error;
        queue.push(left);
        queue.push(right);
    }

    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_estimate));
    if (total_error <= tol) return total_estimate;
    throw NonConvergence("integrate: error " + std::to_string(total_error) +
                         " above tolerance " + std::to_string(tol) +
                         " after " + std::to_string(spec.max_subdivisions) + " subdivisions");
}

double integrate_halfline(const Integrand& f, const QuadratureSpec& spec) {
    auto mapped = [&f](double s) {
        const double one_minus = 1.0 - s;
        const double r = s / one_minus;
        return f(r) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace spl
