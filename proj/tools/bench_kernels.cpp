// Timing comparison of the serial reference loops against the OpenMP kernels:
// transform grid fill, Markov operator on a grid, positivity sampling.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "herglotz/evaluation.hpp"
#include "herglotz/positivity.hpp"
#include "herglotz/transform.hpp"

using namespace herglotz;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warmup
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial path\n");
#endif

    std::mt19937_64 rng(42);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    // A non-contact endomatrix and a grid-density measure (the grid input is
    // what drives the parallel resampling kernel; rational densities take the
    // exact algebraic route instead).
    const Matrix2C base(Complex(0.5, 1.0), Complex(-1.0, -0.5), Complex(1.0, 0.0), Complex(0.0, 1.0));
    const Endomatrix m(base);
    GridDensity gd;
    for (int i = 0; i <= 64; ++i) {
        gd.nodes.push_back(-4.0 + 0.125 * i);
        gd.values.push_back(0.05 + uni(0.0, 0.3) + std::exp(-gd.nodes.back() * gd.nodes.back()));
    }
    gd.tail = 0.2;
    const BoundaryMeasure lambda({{ExtendedReal(0.3), 0.7}}, DensitySpec(gd));

    report("transform_measure grid",
           time_ms([&] { transform_measure(lambda, 0.1, m, 1e-5, ExecPolicy::Serial); }, 3),
           time_ms([&] { transform_measure(lambda, 0.1, m, 1e-5, ExecPolicy::Parallel); }, 3));

    std::vector<ExtendedReal> grid;
    for (int i = 0; i < 400; ++i) grid.emplace_back(-8.0 + 16.0 * i / 399.0);
    const auto f = with_limit([](double x) { return Complex{std::atan(x), 0.0}; },
                              {1.5707963267948966, 0.0});
    report("markov_apply grid (400)",
           time_ms([&] { markov_apply_grid(m, f, grid, 1e-9, ExecPolicy::Serial); }, 3),
           time_ms([&] { markov_apply_grid(m, f, grid, 1e-9, ExecPolicy::Parallel); }, 3));

    const HerglotzFunction phi{0.0, lambda};
    const Evaluator ev = [&](Complex z) { return eval(phi, z, 1e-10); };
    BoundarySupportEstimate sup;
    sup.intervals = {{-4.0, 4.0}};
    sup.contains_infinity = true;
    report("positivity sampling (64x64)",
           time_ms([&] { localized_positivity_check(ev, sup, 0.3, 64, ExecPolicy::Serial); }, 3),
           time_ms([&] { localized_positivity_check(ev, sup, 0.3, 64, ExecPolicy::Parallel); }, 3));
    return 0;
}
