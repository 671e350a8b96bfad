#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include "fund/execution.hpp"

namespace fund::detail {

/// Runs body(i) for i in [0, n). Under Parallel the iterations are spread over
/// OpenMP threads; the first exception thrown by any iteration is rethrown
/// after the loop instead of escaping the parallel region.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fund::detail
