#include "herglotz/cayley.hpp"

#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"
#include "herglotz/quadrature.hpp"

namespace herglotz {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

Complex disk_to_halfplane(Complex z) { return kI * (1.0 - z) / (1.0 + z); }

Complex halfplane_to_disk(Complex w) { return (kI - w) / (kI + w); }

ExtendedReal boundary_param(double t) {
    if (!(t > -kPi - 1e-12) || !(t <= kPi + 1e-12))
        throw std::invalid_argument("boundary_param: t must lie in (-pi, pi]");
    if (std::abs(t - kPi) < 1e-14 || std::abs(t + kPi) < 1e-14) return ExtendedReal::infinity();
    return ExtendedReal(std::tan(0.5 * t));
}

double DiskMeasure::total_mass() const {
    double acc = 0.0;
    for (const auto& a : atoms) acc += a.mass;
    for (size_t i = 0; i + 1 < density_nodes.size(); ++i)
        acc += 0.5 * (density_values[i] + density_values[i + 1]) *
               (density_nodes[i + 1] - density_nodes[i]);
    if (density_nodes.size() >= 2) {
        // wrap segment through zeta = -1 (periodic interpolation)
        const double gap = (kPi - density_nodes.back()) + (density_nodes.front() + kPi);
        acc += 0.5 * (density_values.back() + density_values.front()) * gap;
    }
    return acc;
}

Complex eval_disk(const DiskMeasure& mu, double imag_at_zero, Complex z, double tol) {
    auto kernel = [z](double t) -> Complex {
        const Complex zeta{std::cos(t), std::sin(t)};
        return (zeta + z) / (zeta - z);
    };
    Complex acc = kI * imag_at_zero;
    for (const auto& a : mu.atoms) acc += a.mass * kernel(a.angle) / (2.0 * kPi);
    if (mu.density_nodes.size() >= 2) {
        const auto& n = mu.density_nodes;
        auto integrand = [&](double t) -> Complex {
            const auto it = std::upper_bound(n.begin(), n.end(), t);
            size_t hi = static_cast<size_t>(it - n.begin());
            if (hi == 0) hi = 1;
            if (hi >= n.size()) hi = n.size() - 1;
            const size_t lo = hi - 1;
            const double w = (t - n[lo]) / (n[hi] - n[lo]);
            const double g = (1.0 - w) * mu.density_values[lo] + w * mu.density_values[hi];
            return g * kernel(t);
        };
        acc += gk_adaptive(integrand, n.front(), n.back(), tol, n, 4000) / (2.0 * kPi);
        // Wrap segment through zeta = -1: the density is treated as periodic,
        // linearly interpolated between the last and first node.
        const double gap = (kPi - n.back()) + (n.front() + kPi);
        if (gap > 1e-14) {
            const double g0 = mu.density_values.back(), g1 = mu.density_values.front();
            auto wrap = [&](double u) -> Complex {  // u in [0, gap], t = n.back() + u mod 2pi
                double t = n.back() + u;
                if (t > kPi) t -= 2.0 * kPi;
                const double w = u / gap;
                return ((1.0 - w) * g0 + w * g1) * kernel(t);
            };
            acc += gk_adaptive(wrap, 0.0, gap, tol, {kPi - n.back()}, 400) / (2.0 * kPi);
        }
    }
    return acc;
}

HerglotzFunction transfer_disk_measure(const DiskMeasure& mu, double imag_at_zero) {
    std::vector<BoundaryMeasure::Atom> atoms;
    for (const auto& a : mu.atoms)
        atoms.push_back({boundary_param(a.angle), a.mass / (2.0 * kPi)});
    std::optional<DensitySpec> density;
    if (mu.density_nodes.size() >= 2) {
        GridDensity grid;
        grid.nodes.reserve(mu.density_nodes.size());
        grid.values.reserve(mu.density_nodes.size());
        for (size_t i = 0; i < mu.density_nodes.size(); ++i) {
            const double t = mu.density_nodes[i];
            if (std::abs(std::abs(t) - kPi) < 1e-12)
                throw InvalidMeasure("disk density nodes must be strictly inside (-pi, pi)");
            const double s = std::tan(0.5 * t);
            grid.nodes.push_back(s);
            grid.values.push_back(mu.density_values[i] / (kPi * (1.0 + s * s)));
        }
        grid.tail = 0.5 * (mu.density_values.front() + mu.density_values.back());
        density = std::move(grid);
    }
    return {-imag_at_zero, BoundaryMeasure(std::move(atoms), std::move(density))};
}

}  // namespace herglotz
