#include <doctest.h>

#include <cmath>
#include <numbers>

#include "herglotz/evaluation.hpp"
#include "support.hpp"

using namespace herglotz;

namespace {
const double kPi = std::numbers::pi;

HerglotzFunction affine_function(double a, Complex b) {
    // lambda({inf}) = a, density Im b / (pi (1+x^2)), alpha = Re b.
    std::vector<BoundaryMeasure::Atom> atoms;
    if (a > 0.0) atoms.push_back({ExtendedReal::infinity(), a});
    std::optional<DensitySpec> density;
    if (b.imag() > 0.0) density = RationalDensity{{b.imag() / kPi}, {1.0, 0.0, 1.0}, {}};
    return {b.real(), BoundaryMeasure(std::move(atoms), std::move(density))};
}
}  // namespace

TEST_CASE("eval_atomic closed forms") {
    const Complex z{0.7, 1.3};
    CHECK(eval_atomic(ExtendedReal::infinity(), z) == z);
    CHECK(std::abs(eval_atomic(ExtendedReal(0.0), Complex(0, 2)) - Complex(0, 0.5)) < 1e-15);
    // phi_s fixes i for every s.
    for (double s : {-50.0, -1.0, 0.0, 0.3, 2.0, 1e6})
        CHECK(std::abs(eval_atomic(ExtendedReal(s), Complex(0, 1)) - Complex(0, 1)) < 1e-14);
    CHECK(std::abs(eval_atomic(ExtendedReal::infinity(), Complex(0, 1)) - Complex(0, 1)) == 0.0);
}

TEST_CASE("eval_atomic maps C+ into C+") {
    auto g = testsupport::rng(3);
    for (int i = 0; i < 200; ++i) {
        const Complex z = testsupport::random_upper_point(g);
        const double s = testsupport::uniform(g, -10.0, 10.0);
        CHECK(eval_atomic(ExtendedReal(s), z).imag() > 0.0);
    }
}

TEST_CASE("eval: identity endofunction") {
    const HerglotzFunction id{0.0, BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0)};
    const Complex z{2.0, 3.0};
    CHECK(std::abs(eval(id, z) - z) < 1e-14);
}

TEST_CASE("eval: affine function a z + b") {
    const HerglotzFunction phi = affine_function(2.0, Complex(-0.5, 1.5));
    auto g = testsupport::rng(5);
    for (int i = 0; i < 10; ++i) {
        const Complex z = testsupport::random_upper_point(g);
        const Complex want = 2.0 * z + Complex(-0.5, 1.5);
        CHECK(std::abs(eval(phi, z, 1e-11) - want) < 1e-9);
    }
}

TEST_CASE("eval: atomic measure reproduces a/(z+c) + b") {
    const double a = -1.7, b = 0.4, c = 0.9;
    const HerglotzFunction phi{b + a * c / (1.0 + c * c),
                               BoundaryMeasure::point_mass(ExtendedReal(-c), -a / (1.0 + c * c))};
    auto g = testsupport::rng(9);
    for (int i = 0; i < 10; ++i) {
        const Complex z = testsupport::random_upper_point(g);
        const Complex want = a / (z + c) + b;
        CHECK(std::abs(eval(phi, z) - want) < 1e-12);
    }
}

TEST_CASE("eval: conjugate symmetry and range") {
    auto g = testsupport::rng(21);
    for (int i = 0; i < 8; ++i) {
        const HerglotzFunction phi = testsupport::random_herglotz(g);
        const Complex z = testsupport::random_upper_point(g);
        const Complex up = eval(phi, z, 1e-11);
        const Complex down = eval(phi, std::conj(z), 1e-11);
        CHECK(std::abs(down - std::conj(up)) < 1e-12);
        if (phi.measure.total_mass() > 0.0) CHECK(up.imag() > 0.0);
    }
}

TEST_CASE("eval: normalization at i") {
    auto g = testsupport::rng(33);
    for (int i = 0; i < 6; ++i) {
        const HerglotzFunction phi = testsupport::random_herglotz(g);
        const Complex at_i = eval(phi, Complex(0, 1), 1e-11);
        CHECK(at_i.real() == doctest::Approx(phi.alpha).epsilon(1e-8));
        CHECK(at_i.imag() == doctest::Approx(phi.measure.total_mass()).epsilon(1e-8));
    }
}

TEST_CASE("eval near the real axis stays accurate (pole splitting)") {
    // Cauchy density: phi(z) = i identically, even for tiny Im z.
    const HerglotzFunction phi{0.0, BoundaryMeasure({}, RationalDensity{{1.0 / kPi}, {1.0, 0.0, 1.0}, {}})};
    for (double y : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const Complex got = eval(phi, Complex(0.37, y), 1e-11);
        CHECK(std::abs(got - Complex(0, 1)) < 1e-9);
    }
}

TEST_CASE("eval rejects real points") {
    const HerglotzFunction id{0.0, BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0)};
    CHECK_THROWS_AS(eval(id, Complex(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("eval_composed: identity matrix and identity function") {
    auto g = testsupport::rng(41);
    const HerglotzFunction phi = testsupport::random_herglotz(g);
    const Endomatrix id(Matrix2C{});
    const Complex z = testsupport::random_upper_point(g);
    CHECK(std::abs(eval_composed(phi, id, z, 1e-11) - eval(phi, z, 1e-11)) < 1e-12);

    const HerglotzFunction idfun{0.0, BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0)};
    const Endomatrix m(testsupport::random_noncontact(g));
    const ExtComplex mz = moebius_apply(m.matrix(), ExtComplex(z));
    CHECK(std::abs(eval_composed(idfun, m, z) - mz.value()) < 1e-12);
}

TEST_CASE("eval_composed: phi_0 after inversion is the identity map") {
    // phi_0(-1/z) = z, checked numerically at random points.
    const HerglotzFunction phi0{0.0, BoundaryMeasure::point_mass(ExtendedReal(0.0), 1.0)};
    const Endomatrix j(inversion_matrix());
    auto g = testsupport::rng(55);
    for (int i = 0; i < 20; ++i) {
        const Complex z = testsupport::random_upper_point(g);
        CHECK(std::abs(eval_composed(phi0, j, z) - z) < 1e-12);
    }
}
