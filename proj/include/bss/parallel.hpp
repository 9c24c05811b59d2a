#ifndef BSS_PARALLEL_HPP
#define BSS_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bss {

/// Worker count: BSS_THREADS if set and positive, otherwise the hardware concurrency.
inline unsigned thread_count()
{
  if (const char* env = std::getenv("BSS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(row) for row in [0, rows). Each row must only write its own
/// output slot; callers reduce afterwards so results do not depend on the schedule.
template<class Body>
void parallel_rows(long rows, Body&& body)
{
  const long workers = std::min<long>(thread_count(), rows);
  if (workers <= 1) {
    for (long r = 0; r < rows; ++r)
      body(r);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long r = w; r < rows; r += workers)
          body(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace bss

#endif // BSS_PARALLEL_HPP
