#include "lsii/parallel.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lsii {

int default_thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = default_thread_count();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef _OPENMP
    // Exceptions may not cross the OpenMP region; keep the one from the
    // lowest index so the rethrown error is schedule independent.
    std::exception_ptr first_error;
    std::size_t first_index = n;
    std::mutex guard;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace lsii
