#include <doctest.h>

#include "herglotz/positivity.hpp"
#include "herglotz/transform.hpp"
#include "support.hpp"

// The parallel kernels write per-index slots and aggregate in index order, so
// Serial and Parallel must agree bit for bit.

using namespace herglotz;

TEST_CASE("transform_measure: serial and parallel grids are identical") {
    // Grid-density input drives the parallel resampling kernel.
    auto g = testsupport::rng(127);
    const BoundaryMeasure lambda(
        {{ExtendedReal(0.4), 0.7}},
        GridDensity{{-3.0, -1.0, -0.2, 0.5, 1.4, 3.0}, {0.05, 0.4, 0.9, 0.8, 0.3, 0.05}, 0.1});
    const Endomatrix m(testsupport::random_noncontact(g));
    const auto serial = transform_measure(lambda, 0.25, m, 1e-6, ExecPolicy::Serial);
    const auto parallel = transform_measure(lambda, 0.25, m, 1e-6, ExecPolicy::Parallel);
    CHECK(serial.alpha == parallel.alpha);
    const auto& gs = std::get<GridDensity>(*serial.measure.density());
    const auto& gp = std::get<GridDensity>(*parallel.measure.density());
    REQUIRE(gs.nodes.size() == gp.nodes.size());
    for (size_t i = 0; i < gs.nodes.size(); ++i) {
        CHECK(gs.nodes[i] == gp.nodes[i]);
        CHECK(gs.values[i] == gp.values[i]);
    }
    CHECK(gs.tail == gp.tail);
}

TEST_CASE("markov grid: serial and parallel are identical") {
    auto g = testsupport::rng(131);
    const Endomatrix m(testsupport::random_contact(g));
    const auto f = with_limit([](double x) { return Complex{std::atan(x), 0.0}; },
                              {1.5707963267948966, 0.0});
    std::vector<ExtendedReal> grid;
    for (int i = 0; i < 25; ++i) grid.emplace_back(-3.0 + 0.25 * i);
    grid.push_back(ExtendedReal::infinity());
    const auto a = markov_apply_grid(m, f, grid, 1e-9, ExecPolicy::Serial);
    const auto b = markov_apply_grid(m, f, grid, 1e-9, ExecPolicy::Parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("positivity sampling: serial and parallel agree including the argmin") {
    const Evaluator f = [](Complex z) { return z * z; };
    BoundarySupportEstimate sup;
    sup.intervals = {{-3.0, 3.0}};
    sup.contains_infinity = true;
    const auto a = localized_positivity_check(f, sup, 0.4, 40, ExecPolicy::Serial);
    const auto b = localized_positivity_check(f, sup, 0.4, 40, ExecPolicy::Parallel);
    CHECK(a.pass == b.pass);
    CHECK(a.min_imag == b.min_imag);
    CHECK(a.witness == b.witness);
    CHECK(a.samples == b.samples);
}

TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(64, ExecPolicy::Parallel,
                                 [](size_t i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
