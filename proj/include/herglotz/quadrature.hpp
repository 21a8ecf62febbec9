#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/extended.hpp"

namespace herglotz {

// Gauss(7)/Kronrod(15) pair on [-1,1]; node[7] = 0, the rest come in +/- pairs.
// The 7-point Gauss rule sits on node[1], node[3], node[5] and the center.
namespace gk {
inline constexpr double node[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};
}  // namespace gk

struct PanelResult {
    Complex integral;
    double error;     // |Kronrod - Gauss|, a conservative estimate
    double abs_mass;  // Kronrod rule applied to |f|
};

/// One 15-point Kronrod panel over [a,b] with the embedded 7-point Gauss error estimate.
template <typename F>
PanelResult gk15_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Complex fc = f(mid);
    Complex ik = gk::wk[7] * fc;
    Complex ig = gk::wg[3] * fc;
    double mass = gk::wk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const Complex fp = f(mid + half * gk::node[j]);
        const Complex fm = f(mid - half * gk::node[j]);
        const Complex pair = fp + fm;
        ik += gk::wk[j] * pair;
        mass += gk::wk[j] * (std::abs(fp) + std::abs(fm));
        if (j % 2 == 1) ig += gk::wg[j / 2] * pair;
    }
    ik *= half;
    ig *= half;
    mass *= std::abs(half);
    return {ik, std::abs(ik - ig), mass};
}

/// Adaptive Gauss-Kronrod over [a,b] with optional pre-split points.
/// Refines the worst panel until the summed error estimate drops below tol.
/// Near sharp integrand features the estimate plateaus at the roundoff noise
/// of the evaluations; a plateau that is negligible relative to the absolute
/// integrand mass is accepted, anything else raises NonConvergentQuadrature.
template <typename F>
Complex gk_adaptive(F&& f, double a, double b, double tol,
                    const std::vector<double>& splits = {}, int max_panels = 20000) {
    struct Panel {
        double a, b;
        Complex integral;
        double error;
    };
    std::vector<double> pts{a};
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Panel> panels;
    panels.reserve(64);
    double mass = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = gk15_panel(f, pts[i], pts[i + 1]);
        panels.push_back({pts[i], pts[i + 1], r.integral, r.error});
        mass += r.abs_mass;
    }
    double total_error = 0.0;
    for (const auto& p : panels) total_error += p.error;

    const auto noise_level = [&] { return 1e-7 * (mass + 1e-300); };
    double checkpoint_error = total_error;
    int since_checkpoint = 0;
    while (total_error > tol) {
        const bool out_of_budget = static_cast<int>(panels.size()) >= max_panels;
        bool stalled = false;
        if (++since_checkpoint >= 256) {
            stalled = total_error > 0.995 * checkpoint_error;
            checkpoint_error = total_error;
            since_checkpoint = 0;
        }
        if (out_of_budget || stalled) {
            if (total_error <= noise_level()) break;  // machine-noise plateau
            throw NonConvergentQuadrature(total_error, tol);
        }
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        const Panel old = panels[worst];
        const double m = 0.5 * (old.a + old.b);
        if (m <= old.a || m >= old.b) {
            // Interval at floating-point resolution: nothing left to refine;
            // its contribution is already at evaluation noise.
            total_error -= old.error;
            panels[worst].error = 0.0;
            continue;
        }
        auto left = gk15_panel(f, old.a, m);
        auto right = gk15_panel(f, m, old.b);
        total_error += left.error + right.error - old.error;
        panels[worst] = {old.a, m, left.integral, left.error};
        panels.push_back({m, old.b, right.integral, right.error});
    }
    // Fixed summation order (by left endpoint) keeps results deterministic.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Complex acc{0.0, 0.0};
    for (const auto& p : panels) acc += p.integral;
    return acc;
}

/// x = tan(t/2) compactification of R-bar onto t in (-pi, pi]; t = +/-pi is infinity.
inline double boundary_angle_to_point(double t) { return std::tan(0.5 * t); }
inline double boundary_point_to_angle(double x) { return 2.0 * std::atan(x); }

/// Integral over R of g(x) dx, as an adaptive GK integral over the compactified
/// angle. g must decay at least like 1/x^2 so the compactified integrand stays
/// bounded. split_x are x-locations needing a panel boundary.
template <typename G>
Complex integrate_real_line(G&& g, double tol, const std::vector<double>& split_x = {},
                            int max_panels = 4000) {
    const double pi = std::numbers::pi;
    auto integrand = [&](double t) -> Complex {
        const double x = boundary_angle_to_point(t);
        const double jac = 0.5 * (1.0 + x * x);  // dx/dt
        return g(x) * jac;
    };
    std::vector<double> splits{0.0};
    for (double x : split_x) splits.push_back(boundary_point_to_angle(x));
    return gk_adaptive(integrand, -pi, pi, tol, splits, max_panels);
}

}  // namespace herglotz
