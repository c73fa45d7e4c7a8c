#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace psi6 {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// path kept for testing; Parallel uses OpenMP when the build has it and
/// falls back to the serial loop otherwise. Both paths write each result
/// into its own slot, so they produce bit-identical output.
enum class Execution { Serial, Parallel };

template <typename Body>
void parallel_for(Execution policy, std::int64_t count, Body&& body) {
#ifdef _OPENMP
    if (policy == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
#else
    (void)policy;
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        body(i);
    }
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace psi6
