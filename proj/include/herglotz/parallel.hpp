#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace herglotz {

/// Execution policy for grid-shaped loops. Every kernel writes per-index
/// results into preallocated slots and aggregates in index order afterwards,
/// so Serial and Parallel produce bit-identical output.
enum class ExecPolicy { Serial, Parallel };

/// Run body(i) for i in [0, n). Under Parallel the iterations are distributed
/// with OpenMP (static schedule); the first exception thrown by any iteration
/// is rethrown after the loop joins.
template <typename Body>
void parallel_for(std::size_t n, ExecPolicy policy, Body&& body) {
#ifdef _OPENMP
    if (policy == ExecPolicy::Parallel) {
        std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            if (failure) continue;
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(herglotz_parallel_for_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace herglotz
