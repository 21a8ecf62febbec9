#include <doctest.h>

#include "herglotz/evaluation.hpp"
#include "herglotz/json_io.hpp"
#include "support.hpp"

using namespace herglotz;
namespace io = herglotz::io;

TEST_CASE("phi JSON roundtrip preserves evaluation") {
    auto g = testsupport::rng(109);
    for (int i = 0; i < 6; ++i) {
        const HerglotzFunction phi = testsupport::random_herglotz(g, 3, i % 2 == 0);
        const auto j = io::to_json(phi);
        const HerglotzFunction back = io::herglotz_from_json(j);
        CHECK(back.alpha == phi.alpha);
        CHECK(back.measure.total_mass() == doctest::Approx(phi.measure.total_mass()).epsilon(1e-12));
        const Complex z = testsupport::random_upper_point(g);
        CHECK(std::abs(eval(back, z, 1e-11) - eval(phi, z, 1e-11)) < 1e-10);
    }
}

TEST_CASE("wire format details") {
    const auto j = io::to_json(HerglotzFunction{
        0.5, BoundaryMeasure({{ExtendedReal::infinity(), 1.0}}, std::nullopt)});
    CHECK(j["alpha"] == 0.5);
    CHECK(j["atoms"][0]["loc"] == "inf");
    CHECK(j["density"].is_null());

    const auto parsed = io::herglotz_from_json(io::json::parse(
        R"({"alpha":0,"atoms":[{"loc":"inf","mass":1}],"density":null})"));
    CHECK(parsed.measure.mass_at_infinity() == 1.0);
}

TEST_CASE("matrix JSON roundtrip (projective)") {
    auto g = testsupport::rng(113);
    for (int i = 0; i < 10; ++i) {
        const Matrix2C m = testsupport::random_endomatrix_any(g);
        const Matrix2C back = io::matrix_from_json(io::to_json(m));
        CHECK(back.proportional_to(m, 1e-12));
    }
}

TEST_CASE("grid density JSON roundtrip") {
    GridDensity gd{{-1.0, 0.5, 2.0}, {0.2, 1.0, 0.1}, 0.7};
    const BoundaryMeasure m({{ExtendedReal(0.25), 0.5}}, DensitySpec(gd));
    const BoundaryMeasure back = io::measure_from_json(io::to_json(m));
    CHECK(back.total_mass() == doctest::Approx(m.total_mass()).epsilon(1e-12));
    CHECK(density_value(*back.density(), 1.2) == doctest::Approx(density_value(DensitySpec(gd), 1.2)));
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS(io::herglotz_from_json(io::json::parse(R"({"atoms":[{"loc":"nope","mass":1}]})")));
    CHECK_THROWS(io::matrix_from_json(io::json::parse(R"({"a":[1,0],"b":[0,0]})")));
    CHECK_THROWS(io::measure_from_json(io::json::parse(R"({"atoms":[{"loc":0,"mass":-2}]})")));
}

TEST_CASE("endo class serialization") {
    const auto j = io::to_json(classify(Matrix2C(1.0, Complex(0, 1), 0.0, 1.0)));
    CHECK(j["class"] == "contact-line");
    CHECK(j["kappa"] == 1.0);
    CHECK(j["offset"] == doctest::Approx(1.0));
}
