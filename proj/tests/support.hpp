#pragma once

// Shared test utilities: an independent quadrature oracle (deliberately not
// the library's Gauss-Kronrod path) and random generators for measures and
// endomatrices.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "herglotz/measure.hpp"
#include "herglotz/moebius.hpp"

namespace testsupport {

using herglotz::Complex;

/// Composite-Simpson integral of g over R via x = tan(theta). Independent
/// oracle for density integrals; accuracy ~1e-12 for smooth integrands.
template <typename G>
Complex oracle_integrate_line(G&& g, int panels = 4000) {
    const double lo = -0.5 * std::numbers::pi, hi = 0.5 * std::numbers::pi;
    const double h = (hi - lo) / panels;
    Complex acc{0.0, 0.0};
    auto f = [&](double th) -> Complex {
        const double c = std::cos(th);
        if (std::abs(c) < 1e-12) return {0.0, 0.0};  // integrand must vanish at the ends
        const double x = std::tan(th);
        return g(x) / (c * c);
    };
    for (int i = 0; i < panels; ++i) {
        const double a = lo + i * h;
        acc += (h / 6.0) * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
    }
    return acc;
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Mixture of Lorentzians with moderate widths: a nonnegative rational density
/// with known total mass (the sum of the weights).
inline herglotz::RationalDensity random_rational_density(std::mt19937_64& g, int bumps,
                                                         double* mass_out = nullptr) {
    namespace hp = herglotz::poly;
    std::vector<herglotz::Poly> quads;   // (x-u)^2 + v^2
    std::vector<double> coefs;           // w v / pi
    double mass = 0.0;
    for (int k = 0; k < bumps; ++k) {
        const double u = uniform(g, -2.0, 2.0);
        const double v = uniform(g, 0.5, 1.5);
        const double w = uniform(g, 0.2, 1.0);
        quads.push_back({u * u + v * v, -2.0 * u, 1.0});
        coefs.push_back(w * v / std::numbers::pi);
        mass += w;
    }
    herglotz::Poly num, den{1.0};
    for (int k = 0; k < bumps; ++k) {
        herglotz::Poly term{1.0};
        for (int l = 0; l < bumps; ++l)
            if (l != k) term = hp::mul(term, quads[static_cast<size_t>(l)]);
        num = hp::add(num, hp::scale(term, coefs[static_cast<size_t>(k)]));
        den = hp::mul(den, quads[static_cast<size_t>(k)]);
    }
    if (mass_out) *mass_out = mass;
    return herglotz::RationalDensity{num, den, {}};
}

/// Random measure: up to max_atoms point masses (maybe one at infinity) plus
/// an optional Lorentzian-mixture density.
inline herglotz::BoundaryMeasure random_measure(std::mt19937_64& g, int max_atoms,
                                                bool with_density) {
    std::vector<herglotz::BoundaryMeasure::Atom> atoms;
    const int n = std::uniform_int_distribution<int>(0, max_atoms)(g);
    for (int i = 0; i < n; ++i)
        atoms.push_back({herglotz::ExtendedReal(uniform(g, -3.0, 3.0)), uniform(g, 0.1, 2.0)});
    if (std::uniform_int_distribution<int>(0, 2)(g) == 0)
        atoms.push_back({herglotz::ExtendedReal::infinity(), uniform(g, 0.1, 2.0)});
    std::optional<herglotz::DensitySpec> density;
    if (with_density)
        density = random_rational_density(g, std::uniform_int_distribution<int>(1, 3)(g));
    if (atoms.empty() && !density)
        atoms.push_back({herglotz::ExtendedReal(0.0), 1.0});
    return herglotz::BoundaryMeasure(std::move(atoms), std::move(density));
}

inline herglotz::HerglotzFunction random_herglotz(std::mt19937_64& g, int max_atoms = 5,
                                                  bool with_density = true) {
    return {uniform(g, -1.0, 1.0), random_measure(g, max_atoms, with_density)};
}

/// Random GL+(2,R) element with a determinant bounded away from zero.
inline herglotz::Matrix2C random_real_automatrix(std::mt19937_64& g) {
    for (;;) {
        double a = uniform(g, -2.0, 2.0), b = uniform(g, -2.0, 2.0);
        double c = uniform(g, -2.0, 2.0), d = uniform(g, -2.0, 2.0);
        if (a * d - b * c < 0.0) std::swap(a, c), std::swap(b, d);
        const double det = a * d - b * c;
        const double scale = a * a + b * b + c * c + d * d;
        if (det > 0.15 * scale) return herglotz::Matrix2C(a, b, c, d);
    }
}

/// Maps R-bar onto the circle |w - i| = kappa (kappa in (0,1): non-contact).
inline herglotz::Matrix2C base_noncontact(double kappa) {
    using herglotz::Complex;
    return herglotz::Matrix2C(Complex(kappa, 1.0), Complex(-1.0, -kappa), Complex(1.0, 0.0),
                              Complex(0.0, 1.0));
}

inline herglotz::Matrix2C random_noncontact(std::mt19937_64& g) {
    const double kappa = uniform(g, 0.1, 0.9);
    return random_real_automatrix(g) * base_noncontact(kappa) * random_real_automatrix(g);
}

/// The paper-style tangent family: [[s,-1],[1,s]] [[p,ir],[0,1]] [[t,1],[-1,t]].
inline herglotz::Matrix2C tangent_disk_matrix(double sigma, double tau, double p, double r) {
    using herglotz::Complex;
    const herglotz::Matrix2C left(sigma, -1.0, 1.0, sigma);
    const herglotz::Matrix2C mid(Complex(p, 0.0), Complex(0.0, r), Complex(0.0, 0.0),
                                 Complex(1.0, 0.0));
    const herglotz::Matrix2C right(tau, 1.0, -1.0, tau);
    return left * mid * right;
}

inline herglotz::Matrix2C random_contact(std::mt19937_64& g) {
    if (std::uniform_int_distribution<int>(0, 3)(g) == 0) {
        // Unbounded representative: affine-over-atomic with Im q > 0.
        const herglotz::Matrix2C head(Complex(uniform(g, 0.3, 2.0), 0.0),
                                      Complex(uniform(g, -1.0, 1.0), uniform(g, 0.1, 1.5)),
                                      Complex(0.0, 0.0), Complex(1.0, 0.0));
        const double t = uniform(g, -2.0, 2.0);
        return random_real_automatrix(g) * head * herglotz::Matrix2C(t, 1.0, -1.0, t);
    }
    const auto m = tangent_disk_matrix(uniform(g, -2.0, 2.0), uniform(g, -2.0, 2.0),
                                       uniform(g, 0.3, 2.0), uniform(g, 0.3, 2.0));
    return random_real_automatrix(g) * m * random_real_automatrix(g);
}

inline herglotz::Matrix2C random_endomatrix_any(std::mt19937_64& g) {
    switch (std::uniform_int_distribution<int>(0, 2)(g)) {
        case 0: return random_real_automatrix(g);
        case 1: return random_noncontact(g);
        default: return random_contact(g);
    }
}

inline Complex random_upper_point(std::mt19937_64& g) {
    return {uniform(g, -3.0, 3.0), uniform(g, 0.2, 2.5)};
}

}  // namespace testsupport
