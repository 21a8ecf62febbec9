#include "herglotz/positivity.hpp"

#include <algorithm>
#include <cmath>

namespace herglotz {

bool linear_fractional_check(Complex a, Complex b, Complex c) {
    if (!(b.imag() >= 0.0) || !(c.imag() >= 0.0)) return false;
    return std::abs(a) + a.real() <= 2.0 * b.imag() * c.imag();
}

bool linear_fractional_check_quadratic(Complex a, Complex b, Complex c) {
    const double beta = b.imag(), gamma = c.imag();
    if (!(beta >= 0.0) || !(gamma >= 0.0)) return false;
    const double p2 = beta;
    const double p1 = a.imag();
    const double p0 = beta * gamma * gamma - gamma * a.real();
    if (p2 > 0.0) return p1 * p1 - 4.0 * p2 * p0 <= 0.0;
    return p1 == 0.0 && p0 >= 0.0;
}

bool affine_check(Complex a, Complex b) {
    return a.imag() == 0.0 && a.real() > 0.0 && b.imag() >= 0.0;
}

namespace {
std::vector<double> log_heights(double margin, int n) {
    std::vector<double> ys(static_cast<size_t>(std::max(2, n)));
    const double lo = std::log(margin * 1e-6), hi = std::log(margin);
    for (size_t i = 0; i < ys.size(); ++i)
        ys[i] = std::exp(hi + (lo - hi) * static_cast<double>(i) / (ys.size() - 1));
    return ys;
}
}  // namespace

PositivityReport localized_positivity_check(const Evaluator& phi,
                                            const BoundarySupportEstimate& support, double margin,
                                            int grid_density, ExecPolicy policy) {
    const int nx = std::max(2, grid_density);
    const std::vector<double> ys = log_heights(margin, grid_density);

    std::vector<Complex> points;
    for (const auto& [lo, hi] : support.intervals) {
        const double x0 = lo - margin, x1 = hi + margin;
        for (int i = 0; i < nx; ++i) {
            const double x = x0 + (x1 - x0) * i / (nx - 1);
            for (double y : ys) points.emplace_back(x, y);
        }
    }
    if (support.contains_infinity) {
        // Chart w = -1/z: a neighborhood of infinity in C+ pulls back to a
        // strip at w near 0.
        for (int i = 0; i < nx; ++i) {
            const double u = -margin + 2.0 * margin * i / (nx - 1);
            for (double v : ys) {
                const Complex w{u, v};
                points.push_back(-1.0 / w);
            }
        }
    }

    PositivityReport report;
    report.samples = points.size();
    if (points.empty()) return report;
    std::vector<double> vals(points.size());
    parallel_for(points.size(), policy, [&](size_t i) { vals[i] = phi(points[i]).imag(); });
    report.min_imag = vals[0];
    report.witness = points[0];
    for (size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] < report.min_imag) {
            report.min_imag = vals[i];
            report.witness = points[i];
        }
    }
    report.pass = report.min_imag >= -1e-12;
    return report;
}

}  // namespace herglotz
