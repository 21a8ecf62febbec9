#include <doctest.h>

#include <cmath>

#include "herglotz/errors.hpp"
#include "herglotz/evaluation.hpp"
#include "herglotz/inversion.hpp"
#include "herglotz/transform.hpp"
#include "support.hpp"

using namespace herglotz;

namespace {
const BoundaryFunction kOne = [](const ExtendedReal&) { return Complex{1.0, 0.0}; };

HerglotzFunction own_function(const BoundaryMeasure& m) { return {0.0, m}; }
}  // namespace

TEST_CASE("pushforward_real: identity leaves the measure unchanged") {
    auto g = testsupport::rng(101);
    const auto m = testsupport::random_measure(g, 3, true);
    const auto pushed = pushforward_real(m, Matrix2C{});
    CHECK(pushed.total_mass() == doctest::Approx(m.total_mass()).epsilon(1e-9));
    auto z = Complex(0.3, 0.9);
    CHECK(std::abs(eval(own_function(pushed), z, 1e-11) - eval(own_function(m), z, 1e-11)) < 1e-9);
}

TEST_CASE("pushforward_real: J sends the atom at infinity to an atom at 0") {
    const auto m = BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0);
    const auto pushed = pushforward_real(m, inversion_matrix());
    REQUIRE(pushed.atoms().size() == 1);
    CHECK(pushed.atoms()[0].location == ExtendedReal(0.0));
    CHECK(pushed.atoms()[0].mass == doctest::Approx(1.0));
    // phi(J.z) = -1/z = phi_0(z); verified against direct evaluation.
    auto gg = testsupport::rng(5);
    for (int i = 0; i < 10; ++i) {
        const Complex z = testsupport::random_upper_point(gg);
        CHECK(std::abs(eval(own_function(pushed), z) - (-1.0 / z)) < 1e-11);
    }
}

TEST_CASE("pushforward_real: atom weight matches the displayed identity") {
    // (cs-a)^2 + (ds-b)^2 = (ad-bc)^2 (1+t^2)/(ct+d)^2 for t = A^{-1}.s.
    auto g = testsupport::rng(7);
    for (int i = 0; i < 30; ++i) {
        const Matrix2C am = testsupport::random_real_automatrix(g);
        double a, b, c, d;
        am.real_entries(a, b, c, d);
        const double s = testsupport::uniform(g, -3.0, 3.0);
        const ExtComplex te = moebius_apply(am.inverse(), ExtendedReal(s));
        if (te.is_infinite()) continue;
        const double t = te.value().real();
        const double lhs = std::pow(c * s - a, 2) + std::pow(d * s - b, 2);
        const double det = a * d - b * c;
        const double rhs = det * det * (1.0 + t * t) / std::pow(c * t + d, 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

        // Pushforward of a unit atom at s lands at t with the Remark's weight.
        const auto pushed = pushforward_real(BoundaryMeasure::point_mass(ExtendedReal(s), 1.0), am);
        REQUIRE(pushed.atoms().size() == 1);
        CHECK(pushed.atoms()[0].location.value() == doctest::Approx(t).epsilon(1e-9));
        const double weight = (1.0 + s * s) / (1.0 + t * t) * det / std::pow(a - c * s, 2);
        CHECK(pushed.atoms()[0].mass == doctest::Approx(weight).epsilon(1e-9));
    }
}

TEST_CASE("pushforward_real: rational density maps to a rational density") {
    auto g = testsupport::rng(13);
    double mass = 0.0;
    const auto dens = testsupport::random_rational_density(g, 2, &mass);
    const BoundaryMeasure m({}, dens);
    const Matrix2C am = testsupport::random_real_automatrix(g);
    const auto pushed = pushforward_real(m, am);
    REQUIRE(pushed.density().has_value());
    CHECK(std::holds_alternative<RationalDensity>(*pushed.density()));
    // Change of variables: pushed density at t equals d(A.t) (1+(A.t)^2)/(1+t^2).
    double a, b, c, d;
    am.real_entries(a, b, c, d);
    for (double t : {-2.5, -1.0, 0.0, 0.7, 3.0}) {
        const double den_lin = c * t + d;
        if (std::abs(den_lin) < 1e-6) continue;
        const double s = (a * t + b) / den_lin;
        const double want = density_value(dens, s) * (1.0 + s * s) / (1.0 + t * t);
        CHECK(density_value(*pushed.density(), t) == doctest::Approx(want).epsilon(1e-9));
    }
    // Total mass is preserved under automatrices exactly when... it is not:
    // the weight rescales mass; check against Im phi(A.i) instead.
    const Complex ai = moebius_apply(am, Complex(0, 1));
    CHECK(pushed.total_mass() ==
          doctest::Approx(eval(own_function(m), ai, 1e-11).imag()).epsilon(1e-8));
}

TEST_CASE("pushforward_real: grid density maps node-wise") {
    GridDensity grid{{-1.0, 0.0, 1.0, 2.0}, {0.1, 0.8, 0.4, 0.2}, 0.3};
    const BoundaryMeasure m({}, DensitySpec(grid));
    // Affine automatrix keeps the structure transparent: t = (s-1)/2.
    const Matrix2C am(2.0, 1.0, 0.0, 1.0);  // A.t = 2t + 1
    const auto pushed = pushforward_real(m, am);
    const auto& pg = std::get<GridDensity>(*pushed.density());
    REQUIRE(pg.nodes.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        const double s = grid.nodes[i];
        const double t = (s - 1.0) / 2.0;
        CHECK(pg.nodes[i] == doctest::Approx(t));
        CHECK(pg.values[i] ==
              doctest::Approx(grid.values[i] * (1.0 + s * s) / (1.0 + t * t)).epsilon(1e-12));
    }
    CHECK(pg.tail == doctest::Approx(0.3));  // affine maps keep the tail coefficient
    CHECK_THROWS_AS(pushforward_real(m, Matrix2C(1.0, Complex(0, 1), 0.0, 1.0)),
                    NotRealAutomatrix);
}

TEST_CASE("mu_family: real orbit gives a single atom at M^{-1}.s") {
    auto g = testsupport::rng(19);
    for (int i = 0; i < 20; ++i) {
        const Endomatrix m(testsupport::random_real_automatrix(g));
        const ExtendedReal s(testsupport::uniform(g, -3.0, 3.0));
        const auto mu = mu_family(m, s);
        REQUIRE(mu.atoms().size() == 1);
        CHECK(!mu.density());
        const ExtComplex t = moebius_apply(m.matrix().inverse(), s);
        if (t.is_finite() && mu.atoms()[0].location.is_finite())
            CHECK(mu.atoms()[0].location.value() == doctest::Approx(t.value().real()).epsilon(1e-9));
    }
    // M = identity: mu_s = delta_s.
    const Endomatrix id(Matrix2C{});
    const auto mu = mu_family(id, ExtendedReal(1.25));
    REQUIRE(mu.atoms().size() == 1);
    CHECK(mu.atoms()[0].location.value() == doctest::Approx(1.25));
    CHECK(mu.atoms()[0].mass == doctest::Approx(1.0));
}

TEST_CASE("mu_family: shift matrix at s=inf gives atom at inf plus Cauchy density") {
    const Endomatrix shift(Matrix2C(1.0, Complex(0, 1), 0.0, 1.0));
    const auto mu = mu_family(shift, ExtendedReal::infinity());
    CHECK(mu.mass_at_infinity() == doctest::Approx(1.0));
    REQUIRE(mu.density().has_value());
    // density = 1/(pi (1+x^2))
    for (double x : {-2.0, 0.0, 1.5})
        CHECK(density_value(*mu.density(), x) ==
              doctest::Approx(1.0 / (std::numbers::pi * (1.0 + x * x))).epsilon(1e-12));
    CHECK(mu.total_mass() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("mu_family: total mass identity over all classes") {
    auto g = testsupport::rng(23);
    for (int i = 0; i < 30; ++i) {
        const Matrix2C raw = testsupport::random_endomatrix_any(g);
        const Endomatrix m(raw);
        ExtendedReal s = (i % 4 == 0) ? ExtendedReal::infinity()
                                      : ExtendedReal(testsupport::uniform(g, -3.0, 3.0));
        const auto mu = mu_family(m, s);
        const Complex mi = moebius_apply(m.matrix(), Complex(0, 1));
        CHECK(mu.total_mass() == doctest::Approx(eval_atomic(s, mi).imag()).epsilon(1e-9));
    }
}

TEST_CASE("mu_family reproduces phi_s(M.z) through the representation") {
    auto g = testsupport::rng(29);
    for (int i = 0; i < 12; ++i) {
        const Matrix2C raw = testsupport::random_endomatrix_any(g);
        const Endomatrix m(raw);
        const ExtendedReal s = (i % 3 == 0) ? ExtendedReal::infinity()
                                            : ExtendedReal(testsupport::uniform(g, -2.0, 2.0));
        const auto mu = mu_family(m, s);
        const Matrix2C ms = left_translate(m.matrix(), s);
        for (int k = 0; k < 4; ++k) {
            const Complex z = testsupport::random_upper_point(g);
            const Complex direct = moebius_apply(ms, z);
            const Complex alpha_term = moebius_apply(ms, Complex(0, 1));
            const HerglotzFunction rep{alpha_term.real(), mu};
            CHECK(std::abs(eval(rep, z, 1e-11) - direct) < 5e-9);
        }
    }
}

TEST_CASE("markov_apply: unit function and identity matrix") {
    auto g = testsupport::rng(31);
    // Atomic matrices fix i, so Lambda_M is a Markov operator: Lambda(1) = 1.
    for (int i = 0; i < 10; ++i) {
        const Endomatrix m(atomic_matrix(ExtendedReal(testsupport::uniform(g, -2.0, 2.0))));
        const ExtendedReal s(testsupport::uniform(g, -3.0, 3.0));
        CHECK(std::abs(markov_apply(m, kOne, s) - Complex(1.0, 0.0)) < 1e-10);
    }
    // General M: Lambda_M(1)(s) = Im phi_s(M.i).
    for (int i = 0; i < 10; ++i) {
        const Endomatrix m(testsupport::random_endomatrix_any(g));
        const ExtendedReal s(testsupport::uniform(g, -3.0, 3.0));
        const Complex mi = moebius_apply(m.matrix(), Complex(0, 1));
        CHECK(markov_apply(m, kOne, s).real() ==
              doctest::Approx(eval_atomic(s, mi).imag()).epsilon(1e-8));
    }
    // M = identity: Lambda f = f.
    const Endomatrix id(Matrix2C{});
    const auto f = with_limit([](double x) { return Complex{x / (1.0 + x * x), 0.0}; }, {0.0, 0.0});
    for (double s : {-2.0, 0.0, 0.5})
        CHECK(std::abs(markov_apply(id, f, ExtendedReal(s)) - f(ExtendedReal(s))) < 1e-12);
}

TEST_CASE("markov positivity") {
    auto g = testsupport::rng(37);
    const auto f = with_limit([](double x) { return Complex{1.0 / (1.0 + x * x), 0.0}; }, {0.0, 0.0});
    for (int i = 0; i < 15; ++i) {
        const Endomatrix m(testsupport::random_endomatrix_any(g));
        const ExtendedReal s(testsupport::uniform(g, -3.0, 3.0));
        const Complex v = markov_apply(m, f, s);
        CHECK(v.real() >= -1e-10);
        CHECK(std::abs(v.imag()) < 1e-10);
    }
}

TEST_CASE("transform_measure: identity and single-atom exactness") {
    auto g = testsupport::rng(41);
    const HerglotzFunction phi = testsupport::random_herglotz(g);
    const auto [alpha1, m1] = transform_measure(phi.measure, phi.alpha, Endomatrix(Matrix2C{}), 1e-8);
    CHECK(alpha1 == doctest::Approx(phi.alpha).epsilon(1e-8));
    CHECK(m1.total_mass() == doctest::Approx(phi.measure.total_mass()).epsilon(1e-8));

    // lambda = unit atom at s0: lambda^M = mu_{s0 M} exactly.
    const double s0 = 0.8;
    const BoundaryMeasure atom = BoundaryMeasure::point_mass(ExtendedReal(s0), 1.0);
    const Endomatrix m(testsupport::random_contact(g));
    const auto [alpha2, m2] = transform_measure(atom, 0.0, m, 1e-8);
    const auto mu = mu_family(m, ExtendedReal(s0));
    CHECK(m2.total_mass() == doctest::Approx(mu.total_mass()).epsilon(1e-8));
    const Complex z{0.4, 1.1};
    CHECK(std::abs(eval(own_function(m2), z, 1e-10) - eval(own_function(mu), z, 1e-10)) < 1e-8);
}

TEST_CASE("transform_measure: representation identity on random instances") {
    auto g = testsupport::rng(43);
    for (int i = 0; i < 6; ++i) {
        const HerglotzFunction phi = testsupport::random_herglotz(g, 3, true);
        const Endomatrix m(testsupport::random_endomatrix_any(g));
        const auto [alpha_m, lambda_m] = transform_measure(phi.measure, phi.alpha, m, 1e-7);
        const HerglotzFunction transformed{alpha_m, lambda_m};
        // Total mass = Im phi(M.i).
        CHECK(lambda_m.total_mass() ==
              doctest::Approx(eval_composed(phi, m, Complex(0, 1), 1e-10).imag()).epsilon(1e-6));
        for (int k = 0; k < 3; ++k) {
            const Complex z = testsupport::random_upper_point(g);
            const Complex lhs = eval_composed(phi, m, z, 1e-10);
            const Complex rhs = eval(transformed, z, 1e-9);
            CHECK(std::abs(lhs - rhs) < 2e-6);
        }
    }
}

TEST_CASE("transform_measure: density part contributes no atoms off the real orbit") {
    auto g = testsupport::rng(47);
    double mass = 0.0;
    const BoundaryMeasure dens_only({}, testsupport::random_rational_density(g, 2, &mass));
    const Endomatrix m(testsupport::random_noncontact(g));
    // Rational densities transform exactly to rational densities.
    const auto [alpha_m, lambda_m] = transform_measure(dens_only, 0.0, m, 1e-7);
    CHECK(lambda_m.atoms().empty());
    REQUIRE(lambda_m.density().has_value());
    CHECK(std::holds_alternative<RationalDensity>(*lambda_m.density()));

    // Grid densities transform through the resampling grid.
    const BoundaryMeasure grid_only(
        {}, GridDensity{{-2.0, -1.0, 0.0, 1.0, 2.0}, {0.1, 0.6, 1.0, 0.6, 0.1}, 0.2});
    const auto [alpha_g, lambda_g] = transform_measure(grid_only, 0.0, m, 1e-6);
    CHECK(lambda_g.atoms().empty());
    REQUIRE(lambda_g.density().has_value());
    CHECK(std::holds_alternative<GridDensity>(*lambda_g.density()));
    // Identity check for the grid route as well.
    const HerglotzFunction src{0.0, grid_only};
    const HerglotzFunction out{alpha_g, lambda_g};
    for (int k = 0; k < 3; ++k) {
        const Complex z = testsupport::random_upper_point(g);
        CHECK(std::abs(eval_composed(src, m, z, 1e-9) - eval(out, z, 1e-8)) < 1e-5);
    }
}

TEST_CASE("semigroup law") {
    auto g = testsupport::rng(53);
    std::vector<ExtendedReal> grid;
    for (int i = 0; i < 9; ++i) grid.emplace_back(-4.0 + i);
    grid.push_back(ExtendedReal::infinity());
    const auto f = with_limit([](double x) { return Complex{1.0 / (1.0 + x * x), 0.0}; }, {0.0, 0.0});

    // N = identity.
    const Endomatrix m(testsupport::random_noncontact(g));
    CHECK(semigroup_check(m, Endomatrix(Matrix2C{}), f, grid, 1e-9) < 1e-8);

    // Atomic pairs compose in closed form.
    const Endomatrix a1(atomic_matrix(ExtendedReal(0.7)));
    const Endomatrix a2(atomic_matrix(ExtendedReal(-1.2)));
    CHECK(semigroup_check(a1, a2, f, grid, 1e-9) < 1e-8);

    // Random mixed pair.
    const Endomatrix n(testsupport::random_contact(g));
    CHECK(semigroup_check(m, n, f, grid, 1e-8) < 1e-6);
}

TEST_CASE("weak* continuity along the left-translate path") {
    // mu_{sM}(f) is continuous in s across the contact point s = sigma, where
    // the measure's atom appears.
    const double sigma = 0.5;
    const auto mc = testsupport::tangent_disk_matrix(sigma, -0.3, 1.1, 0.7);
    const Endomatrix m(mc);
    const auto f = with_limit([](double x) { return Complex{1.0 / (1.0 + x * x), 0.0}; }, {0.0, 0.0});
    auto lambda_f = [&](double s) {
        return markov_apply(m, f, ExtendedReal(s), 1e-10).real();
    };
    const double at = lambda_f(sigma);
    double step = 0.02;
    double prev_gap = 0.0;
    for (int level = 0; level < 4; ++level) {
        const double gap = std::max(std::abs(lambda_f(sigma + step) - at),
                                    std::abs(lambda_f(sigma - step) - at));
        if (level > 0) CHECK(gap < 0.75 * prev_gap + 1e-12);
        prev_gap = gap;
        step *= 0.5;
    }
}

TEST_CASE("support of the pushforward on the real orbit") {
    // For automatrices the support moves by M^{-1}.
    auto g = testsupport::rng(59);
    const Matrix2C am = testsupport::random_real_automatrix(g);
    const BoundaryMeasure m({{ExtendedReal(-1.0), 0.5}, {ExtendedReal(2.0), 1.5}}, std::nullopt);
    const auto pushed = pushforward_real(m, am);
    REQUIRE(pushed.atoms().size() == 2);
    for (const auto& atom : pushed.atoms()) {
        bool matches = false;
        for (const auto& src : m.atoms()) {
            const ExtComplex t = moebius_apply(am.inverse(), src.location);
            if (t.is_finite() && atom.location.is_finite() &&
                std::abs(t.value().real() - atom.location.value()) < 1e-9)
                matches = true;
            if (t.is_infinite() && atom.location.is_infinite()) matches = true;
        }
        CHECK(matches);
    }
}

TEST_CASE("kernel family wrapper and J-pushforward inversion oracle") {
    // KernelFamily packages the measure family behind the Markov operator.
    auto g = testsupport::rng(63);
    const KernelFamily family{Endomatrix(testsupport::random_contact(g))};
    const ExtendedReal s(0.4);
    const Complex mi = moebius_apply(family.m.matrix(), Complex(0, 1));
    CHECK(family.measure_at(s).total_mass() ==
          doctest::Approx(eval_atomic(s, mi).imag()).epsilon(1e-9));

    // Independent recovery of the J-pushforward atom via the boundary limit.
    const auto pushed =
        pushforward_real(BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0),
                         inversion_matrix());
    const HerglotzFunction phi{0.0, pushed};
    const Evaluator ev = [&phi](Complex z) { return eval(phi, z, 1e-12); };
    CHECK(atom_mass_at(ev, 0.0).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mass_at_infinity(ev).value == doctest::Approx(0.0));
}
