#pragma once

#include <cstddef>
#include <functional>

namespace lsii {

/// Number of workers used when a caller passes threads = 0.
int default_thread_count();

/// Runs body(i) for i in [0, n). With threads == 1 this is a plain serial
/// loop (the reference path); otherwise iterations are spread over an OpenMP
/// team of `threads` workers (0 means default_thread_count()). Every index
/// must write only to its own output slot, so results never depend on the
/// schedule.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace lsii
