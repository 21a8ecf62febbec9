#include "herglotz/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {

namespace {
constexpr double kPi = std::numbers::pi;

/// Richardson extrapolation of F(y) -> L as y -> 0, assuming a regular
/// expansion L + c1 y + c2 y^2 + ...: Neville's scheme evaluating the
/// interpolating polynomial through (y_k, F(y_k)) at 0. Divergence (an atom
/// under the probe makes F blow up like 1/y) is flagged either by the stated
/// 1e3 growth of consecutive diagonal differences or by three consecutive
/// raw differences each growing by 1.5x.
std::pair<Complex, double> richardson(const std::vector<double>& y_seq,
                                      const std::function<Complex(double)>& f) {
    const size_t n = y_seq.size();
    if (n < 3) throw std::invalid_argument("richardson: need at least three levels");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(y_seq[i + 1] < y_seq[i]) || !(y_seq[i + 1] > 0.0))
            throw std::invalid_argument("richardson: y_seq must decrease to 0");

    std::vector<Complex> prev_row, cur_row;
    Complex prev_diag{}, prev_raw{};
    double prev_diag_diff = 0.0, prev_raw_diff = 0.0;
    int diag_growth = 0, raw_growth = 0;
    Complex best{};
    double best_err = INFINITY;
    for (size_t k = 0; k < n; ++k) {
        cur_row.assign(k + 1, Complex{});
        cur_row[0] = f(y_seq[k]);
        for (size_t j = 1; j <= k; ++j)
            cur_row[j] = (y_seq[k] * prev_row[j - 1] - y_seq[k - j] * cur_row[j - 1]) /
                         (y_seq[k] - y_seq[k - j]);
        const Complex diag = cur_row[k];
        if (k > 0) {
            const double raw_diff = std::abs(cur_row[0] - prev_raw);
            const double diag_diff = std::abs(diag - prev_diag);
            if (k > 1) {
                diag_growth = (prev_diag_diff > 0.0 && diag_diff > 1e3 * prev_diag_diff)
                                  ? diag_growth + 1 : 0;
                raw_growth = (prev_raw_diff > 0.0 && raw_diff > 1.5 * prev_raw_diff)
                                 ? raw_growth + 1 : 0;
                if (diag_growth >= 2 || raw_growth >= 3)
                    throw NoConvergence("extrapolants diverge (atom or support edge at the probe)");
            }
            if (diag_diff <= best_err) {
                best_err = diag_diff;
                best = diag;
            }
            prev_diag_diff = diag_diff;
            prev_raw_diff = raw_diff;
        }
        prev_diag = diag;
        prev_raw = cur_row[0];
        prev_row = cur_row;
    }
    return {best, best_err};
}
}  // namespace

std::vector<double> geometric_levels(double y0, double ratio, int levels) {
    std::vector<double> y(static_cast<size_t>(levels));
    double v = y0;
    for (int i = 0; i < levels; ++i, v *= ratio) y[static_cast<size_t>(i)] = v;
    return y;
}

ExtrapolatedValue density_at(const Evaluator& phi, double x, const std::vector<double>& y_seq) {
    const double scale = kPi * (1.0 + x * x);
    auto [value, err] = richardson(y_seq, [&](double y) -> Complex {
        return Complex(phi(Complex(x, y)).imag() / scale, 0.0);
    });
    return {value.real(), err};
}

ExtrapolatedValue mass_at_infinity(const Evaluator& phi, int levels) {
    // h = 1/y with y doubling from 1; Im phi(iy)/y = L + c1 h + c2 h^2 + ...
    std::vector<double> h(static_cast<size_t>(levels));
    for (int i = 0; i < levels; ++i) h[static_cast<size_t>(i)] = std::pow(0.5, i);
    auto [value, err] = richardson(h, [&](double hh) -> Complex {
        const double y = 1.0 / hh;
        return Complex(phi(Complex(0.0, y)).imag() / y, 0.0);
    });
    return {value.real(), err};
}

ExtrapolatedValue atom_mass_at(const Evaluator& phi, double c, const std::vector<double>& y_seq) {
    auto [value, err] = richardson(
        y_seq, [&](double y) -> Complex { return y * phi(Complex(c, y)); });
    // y phi(c+iy) -> i (1+c^2) lambda({c}).
    return {value.imag() / (1.0 + c * c), err / (1.0 + c * c)};
}

StoltzReport stoltz_verify(const Evaluator& phi, const BoundaryMeasure& lambda,
                           const StoltzSector& sector, int samples, double threshold, double b) {
    const int rays = 5;
    const int decades = 6;
    const int per_decade = std::max(2, samples / (rays * decades));
    const double half_open = 0.95 * sector.aperture;

    StoltzReport report;
    report.decade_max.assign(static_cast<size_t>(decades), 0.0);
    report.sup_bounded_set = 0.0;
    report.worst_point = Complex(0.0, 1.0);

    const bool at_infinity = sector.apex.is_infinite();
    const double c = at_infinity ? 0.0 : sector.apex.value();
    const double mass = at_infinity ? lambda.mass_at_infinity() : lambda.atom_mass(c);

    double worst_outer = -1.0;
    for (int ridx = 0; ridx < rays; ++ridx) {
        const double off = rays == 1 ? 0.0 : -half_open + 2.0 * half_open * ridx / (rays - 1);
        const double theta = 0.5 * kPi + off;  // measured from the positive real axis
        for (int dec = 0; dec < decades; ++dec) {
            double dec_max = 0.0;
            Complex dec_worst{};
            for (int k = 0; k < per_decade; ++k) {
                const double expo = dec + static_cast<double>(k) / per_decade;
                const double rho = at_infinity ? b * std::pow(10.0, expo)
                                               : b * std::pow(10.0, -expo);
                const Complex offset = rho * Complex(std::cos(theta), std::sin(theta));
                const Complex z = at_infinity ? offset : Complex(c, 0.0) + offset;
                const double y = z.imag();
                double q;
                if (at_infinity) {
                    q = std::abs(phi(z) - mass * z) / y;
                    report.sup_bounded_set = std::max(report.sup_bounded_set, std::abs(phi(z)) / y);
                } else {
                    q = std::abs(y * (phi(z) + mass * (1.0 + c * c) / (z - Complex(c, 0.0))));
                    report.sup_bounded_set = std::max(report.sup_bounded_set, std::abs(y * phi(z)));
                }
                if (q > dec_max) {
                    dec_max = q;
                    dec_worst = z;
                }
            }
            auto& slot = report.decade_max[static_cast<size_t>(dec)];
            if (dec_max > slot) slot = dec_max;
            if (dec == decades - 1 && dec_max > worst_outer) {
                worst_outer = dec_max;
                report.worst_point = dec_worst;
            }
        }
    }
    report.innermost = report.decade_max.front();
    report.outermost = report.decade_max.back();
    if (!(report.outermost <= threshold))
        throw ViolationDetected("nontangential residual " + std::to_string(report.outermost) +
                                    " above threshold at the limit end",
                                report.worst_point);
    for (size_t i = 1; i < report.decade_max.size(); ++i) {
        if (report.decade_max[i] > 1.25 * report.decade_max[i - 1] + threshold)
            throw ViolationDetected("nontangential residual fails to decay between decades",
                                    report.worst_point);
    }
    return report;
}

BoundarySupportEstimate support_estimate(const Evaluator& phi, const std::vector<double>& grid,
                                         double y_probe, double threshold, ExecPolicy policy) {
    BoundarySupportEstimate out;
    out.threshold = threshold;
    if (grid.empty()) return out;
    std::vector<char> hot(grid.size(), 0);
    parallel_for(grid.size(), policy, [&](size_t i) {
        const double x = grid[i];
        bool h = std::abs(phi(Complex(x, y_probe)).imag()) > threshold;
        if (!h) {
            try {
                h = atom_mass_at(phi, x).value > threshold;
            } catch (const NoConvergence&) {
                h = true;  // divergence itself signals boundary mass
            }
        }
        hot[i] = h ? 1 : 0;
    });
    for (size_t i = 0; i < grid.size();) {
        if (!hot[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < grid.size() && hot[j + 1]) ++j;
        out.intervals.emplace_back(grid[i], grid[j]);
        i = j + 1;
    }
    try {
        out.contains_infinity = mass_at_infinity(phi).value > threshold;
    } catch (const NoConvergence&) {
        out.contains_infinity = true;
    }
    return out;
}

}  // namespace herglotz
