#include "herglotz/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"
#include "herglotz/quadrature.hpp"

namespace herglotz {

namespace {
constexpr double kPi = std::numbers::pi;

void validate_rational(const RationalDensity& d) {
    const Poly num = poly::trim(d.num, 0.0);
    const Poly den = poly::trim(d.den, 0.0);
    if (poly::degree(den) < 0) throw InvalidMeasure("rational density: zero denominator");
    if (poly::degree(num) >= 0 && poly::degree(num) > poly::degree(den) - 2)
        throw InvalidMeasure("rational density: need deg num <= deg den - 2");
    for (const Complex& r : poly::roots(den)) {
        if (std::abs(r.imag()) < 1e-9 * (1.0 + std::abs(r.real())))
            throw InvalidMeasure("rational density: denominator has a (near-)real root");
    }
    // Nonnegativity is sampled, not proven; exact inputs built by the library
    // satisfy it by construction.
    for (int k = 0; k <= 512; ++k) {
        const double t = (-kPi + 2.0 * kPi * k / 512.0) * (1.0 - 1e-12);
        const double x = boundary_angle_to_point(t);
        const double v = poly::eval(num, x) / poly::eval(den, x);
        if (v < -1e-9 * (1.0 + std::abs(v)))
            throw InvalidMeasure("rational density: negative value at x = " + std::to_string(x));
    }
}

void validate_grid(const GridDensity& d) {
    if (d.nodes.size() != d.values.size())
        throw InvalidMeasure("grid density: nodes/values length mismatch");
    if (d.nodes.size() < 2) throw InvalidMeasure("grid density: need at least two nodes");
    for (size_t i = 0; i + 1 < d.nodes.size(); ++i)
        if (!(d.nodes[i] < d.nodes[i + 1]))
            throw InvalidMeasure("grid density: nodes must be strictly increasing");
    for (double v : d.values)
        if (!(v >= 0.0)) throw InvalidMeasure("grid density: negative value");
    if (!(d.tail >= 0.0)) throw InvalidMeasure("grid density: negative tail coefficient");
}
}  // namespace

double density_value(const RationalDensity& d, double x) {
    if (!d.stable.empty()) {
        double acc = 0.0;
        for (const auto& term : d.stable) {
            const Complex up = poly::eval(term.up, Complex(x, 0.0));
            const Complex lo = poly::eval(term.lo, Complex(x, 0.0));
            acc += (up * std::conj(lo)).imag() / std::norm(lo);
        }
        return acc / (kPi * (1.0 + x * x));
    }
    return poly::eval(d.num, x) / poly::eval(d.den, x);
}

double density_value(const GridDensity& g, double x) {
    if (x < g.nodes.front() || x > g.nodes.back()) return g.tail / (kPi * (1.0 + x * x));
    const auto it = std::upper_bound(g.nodes.begin(), g.nodes.end(), x);
    size_t hi = static_cast<size_t>(it - g.nodes.begin());
    if (hi >= g.nodes.size()) hi = g.nodes.size() - 1;
    if (hi == 0) return g.values[0];
    const size_t lo = hi - 1;
    const double w = (x - g.nodes[lo]) / (g.nodes[hi] - g.nodes[lo]);
    return (1.0 - w) * g.values[lo] + w * g.values[hi];
}

double density_value(const DensitySpec& d, double x) {
    if (const auto* r = std::get_if<RationalDensity>(&d)) return density_value(*r, x);
    return density_value(std::get<GridDensity>(d), x);
}

double density_integral(const DensitySpec& d, double tol) {
    if (const auto* r = std::get_if<RationalDensity>(&d)) {
        auto g = [&](double x) -> Complex { return density_value(*r, x); };
        return integrate_real_line(g, tol, r->split_hints).real();
    }
    const auto& g = std::get<GridDensity>(d);
    double acc = 0.0;  // piecewise-linear part integrates exactly
    for (size_t i = 0; i + 1 < g.nodes.size(); ++i)
        acc += 0.5 * (g.values[i] + g.values[i + 1]) * (g.nodes[i + 1] - g.nodes[i]);
    // Cauchy tails have closed-form mass.
    acc += g.tail / kPi * (0.5 * kPi + std::atan(g.nodes.front()));
    acc += g.tail / kPi * (0.5 * kPi - std::atan(g.nodes.back()));
    return acc;
}

double density_tail_constant(const DensitySpec& d) {
    if (const auto* r = std::get_if<RationalDensity>(&d)) {
        const int dn = poly::degree(r->num), dd = poly::degree(r->den);
        if (dn < 0 || dn < dd - 2) return 0.0;
        return kPi * r->num[static_cast<size_t>(dn)] / r->den[static_cast<size_t>(dd)];
    }
    return std::get<GridDensity>(d).tail;
}

void BoundaryMeasure::merge_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (const Atom& a : atoms) {
        if (!(a.mass > 0.0)) throw InvalidMeasure("atom mass must be positive");
        if (!atoms_.empty() && atoms_.back().location == a.location)
            atoms_.back().mass += a.mass;  // measures are sets of masses, not lists
        else
            atoms_.push_back(a);
    }
}

BoundaryMeasure::BoundaryMeasure(std::vector<Atom> atoms, std::optional<DensitySpec> density,
                                 double tol)
    : density_(std::move(density)) {
    merge_atoms(std::move(atoms));
    if (density_) {
        if (const auto* r = std::get_if<RationalDensity>(&*density_))
            validate_rational(*r);
        else
            validate_grid(std::get<GridDensity>(*density_));
    }
    total_mass_ = 0.0;
    for (const Atom& a : atoms_) total_mass_ += a.mass;
    if (density_) total_mass_ += density_integral(*density_, tol);
    if (!std::isfinite(total_mass_)) throw InvalidMeasure("total mass is not finite");
}

BoundaryMeasure BoundaryMeasure::point_mass(const ExtendedReal& where, double mass) {
    return BoundaryMeasure({Atom{where, mass}}, std::nullopt);
}

BoundaryMeasure BoundaryMeasure::trusted(std::vector<Atom> atoms,
                                         std::optional<DensitySpec> density,
                                         double known_total_mass) {
    BoundaryMeasure m;
    m.density_ = std::move(density);
    m.merge_atoms(std::move(atoms));
    if (known_total_mass >= 0.0) {
        m.total_mass_ = known_total_mass;
    } else {
        for (const Atom& a : m.atoms_) m.total_mass_ += a.mass;
        if (m.density_) m.total_mass_ += density_integral(*m.density_, 1e-12);
    }
    return m;
}

double BoundaryMeasure::mass_at_infinity() const {
    for (const Atom& a : atoms_)
        if (a.location.is_infinite()) return a.mass;
    return 0.0;
}

double BoundaryMeasure::atom_mass(double x) const {
    for (const Atom& a : atoms_)
        if (a.location.is_finite() && a.location.value() == x) return a.mass;
    return 0.0;
}

BoundaryFunction with_limit(std::function<Complex(double)> on_real, Complex at_infinity) {
    return [on_real = std::move(on_real), at_infinity](const ExtendedReal& s) -> Complex {
        return s.is_infinite() ? at_infinity : on_real(s.value());
    };
}

namespace {
/// Integral of f against a grid density: one Kronrod panel per node interval
/// (in angle coordinates, so all intervals are well scaled), escalating to
/// adaptive refinement only where the panel estimate misses its share. Global
/// adaptivity would stall on the kinks at the nodes.
Complex integrate_grid_density(const GridDensity& g, const BoundaryFunction& f, double tol,
                               const std::vector<double>& split_hints) {
    const size_t n = g.nodes.size();
    auto point_integrand = [&](double t) -> Complex {
        const double x = boundary_angle_to_point(t);
        const double jac = 0.5 * (1.0 + x * x);
        return f(ExtendedReal(x)) * density_value(g, x) * jac;
    };
    const double share = tol / static_cast<double>(n + 2);
    Complex acc{0.0, 0.0};
    double t_prev = boundary_point_to_angle(g.nodes.front());
    for (size_t i = 0; i + 1 < n; ++i) {
        const double t_next = boundary_point_to_angle(g.nodes[i + 1]);
        const auto panel = gk15_panel(point_integrand, t_prev, t_next);
        if (panel.error <= share || panel.error <= 1e-15 * panel.abs_mass) {
            acc += panel.integral;
        } else {
            std::vector<double> local;
            for (double h : split_hints) {
                const double th = boundary_point_to_angle(h);
                if (th > t_prev && th < t_next) local.push_back(th);
            }
            acc += gk_adaptive(point_integrand, t_prev, t_next, share, local, 400);
        }
        t_prev = t_next;
    }
    // Tails: density = tail / (pi (1+x^2)); the jacobian cancels the decay.
    auto tail_integrand = [&](double t) -> Complex {
        const double x = boundary_angle_to_point(t);
        return f(ExtendedReal(x)) * (g.tail / (2.0 * kPi));
    };
    const double t_lo = boundary_point_to_angle(g.nodes.front());
    const double t_hi = boundary_point_to_angle(g.nodes.back());
    if (g.tail > 0.0) {
        acc += gk_adaptive(tail_integrand, -kPi, t_lo, share, {}, 400);
        acc += gk_adaptive(tail_integrand, t_hi, kPi, share, {}, 400);
    }
    return acc;
}
}  // namespace

Complex integrate(const BoundaryMeasure& measure, const BoundaryFunction& f, double tol,
                  const std::vector<double>& split_hints) {
    Complex acc{0.0, 0.0};
    for (const auto& a : measure.atoms()) acc += a.mass * f(a.location);
    if (!measure.density()) return acc;
    const DensitySpec& d = *measure.density();
    if (const auto* r = std::get_if<RationalDensity>(&d)) {
        std::vector<double> hints = r->split_hints;
        hints.insert(hints.end(), split_hints.begin(), split_hints.end());
        auto g = [&](double x) -> Complex { return f(ExtendedReal(x)) * density_value(*r, x); };
        acc += integrate_real_line(g, tol, hints);
    } else {
        acc += integrate_grid_density(std::get<GridDensity>(d), f, tol, split_hints);
    }
    return acc;
}

}  // namespace herglotz
