#include <doctest.h>

#include <cmath>
#include <numbers>

#include "herglotz/cayley.hpp"
#include "herglotz/evaluation.hpp"
#include "support.hpp"

using namespace herglotz;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("cayley point maps") {
    CHECK(std::abs(disk_to_halfplane(Complex(0, 0)) - Complex(0, 1)) < 1e-15);
    // Real diameter maps to the imaginary axis.
    for (double x : {-0.9, -0.3, 0.4, 0.8}) {
        const Complex w = disk_to_halfplane(Complex(x, 0));
        CHECK(std::abs(w.real()) < 1e-15);
        CHECK(w.imag() == doctest::Approx((1.0 - x) / (1.0 + x)));
    }
    // Roundtrip on random disk points.
    auto g = testsupport::rng(103);
    for (int i = 0; i < 100; ++i) {
        const double r = std::sqrt(testsupport::uniform(g, 0.0, 0.96));
        const double th = testsupport::uniform(g, -kPi, kPi);
        const Complex z = std::polar(r, th);
        const Complex w = disk_to_halfplane(z);
        CHECK(w.imag() > 0.0);
        CHECK(std::abs(halfplane_to_disk(w) - z) < 1e-14);
    }
}

TEST_CASE("boundary parametrization") {
    CHECK(boundary_param(0.0) == ExtendedReal(0.0));
    CHECK(boundary_param(kPi / 2.0).value() == doctest::Approx(1.0));
    CHECK(boundary_param(kPi).is_infinite());
    // Matches the Cayley image of the circle point.
    for (double t : {-2.0, -0.5, 0.3, 2.5}) {
        const Complex zeta = std::polar(1.0, t);
        const Complex w = disk_to_halfplane(zeta * (1.0 - 1e-9));
        CHECK(w.real() == doctest::Approx(boundary_param(t).value()).epsilon(1e-6));
    }
}

TEST_CASE("transfer: uniform disk measure gives the Cauchy density") {
    DiskMeasure mu;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        mu.density_nodes.push_back(-kPi + 2.0 * kPi * (i + 1) / (n + 1));
        mu.density_values.push_back(1.0);
    }
    const HerglotzFunction phi = transfer_disk_measure(mu, 0.0);
    CHECK(phi.alpha == doctest::Approx(0.0));
    // Total mass mu(T)/2pi = 1, up to the piecewise-linear resampling of the
    // caller's uniform angle grid (O(1/n)).
    CHECK(phi.measure.total_mass() == doctest::Approx(1.0).epsilon(2e-3));
    // Density values are exactly Cauchy at the nodes.
    const auto& grid = std::get<GridDensity>(*phi.measure.density());
    for (size_t i = 0; i < grid.nodes.size(); i += 397) {
        const double s = grid.nodes[i];
        CHECK(grid.values[i] == doctest::Approx(1.0 / (kPi * (1.0 + s * s))).epsilon(1e-12));
    }
    CHECK(grid.tail == doctest::Approx(1.0));
    // The transferred function is approximately the constant i.
    for (const Complex w : {Complex(0.0, 1.0), Complex(0.7, 0.4), Complex(-2.0, 2.0)})
        CHECK(std::abs(eval(phi, w, 1e-9) - Complex(0, 1)) < 2e-3);
}

TEST_CASE("transfer: atom at t=pi becomes the identity map") {
    DiskMeasure mu;
    mu.atoms.push_back({kPi, 2.0 * kPi});
    const HerglotzFunction phi = transfer_disk_measure(mu, 0.0);
    CHECK(phi.measure.mass_at_infinity() == doctest::Approx(1.0));
    for (const Complex w : {Complex(0, 1), Complex(0, 2), Complex(1.5, 0.5)}) {
        CHECK(std::abs(eval(phi, w) - w) < 1e-12);
        // Disk side: i phi_disk(z) should equal w as well.
        const Complex z = halfplane_to_disk(w);
        CHECK(std::abs(Complex(0, 1) * eval_disk(mu, 0.0, z) - w) < 1e-9);
    }
}

TEST_CASE("evaluation consistency: i * disk evaluation = half-plane evaluation") {
    // Density vanishing at the span ends plus interior atoms: the wrap
    // segment carries nothing, so both routes agree to quadrature accuracy.
    DiskMeasure mu;
    const int n = 301;
    for (int i = 0; i < n; ++i) {
        const double t = -2.8 + 5.6 * i / (n - 1);
        mu.density_nodes.push_back(t);
        mu.density_values.push_back(std::max(0.0, std::cos(t * kPi / 5.6)) * (2.8 - std::abs(t)));
    }
    mu.atoms.push_back({0.9, 1.3});
    mu.atoms.push_back({-2.1, 0.4});
    const double imag0 = 0.35;
    const HerglotzFunction phi = transfer_disk_measure(mu, imag0);

    auto g = testsupport::rng(107);
    for (int i = 0; i < 12; ++i) {
        const double r = std::sqrt(testsupport::uniform(g, 0.0, 0.8));
        const Complex z = std::polar(r, testsupport::uniform(g, -kPi, kPi));
        const Complex lhs = Complex(0, 1) * eval_disk(mu, imag0, z, 1e-10);
        const Complex rhs = eval(phi, disk_to_halfplane(z), 1e-10);
        CHECK(std::abs(lhs - rhs) < 2e-4);  // grid-model discretization bound
    }
    // Total mass preservation.
    CHECK(phi.measure.total_mass() ==
          doctest::Approx(mu.total_mass() / (2.0 * kPi)).epsilon(1e-3));
    // alpha = Re phi(i) = -Im phi_disk(0).
    CHECK(eval(phi, Complex(0, 1), 1e-10).real() == doctest::Approx(-imag0).epsilon(1e-9));
}
