#ifndef STAKETOW_PARALLEL_H_
#define STAKETOW_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace staketow {

// STAKETOW_THREADS if set and positive, else the hardware concurrency.
inline int ThreadCount() {
  if (const char* env = std::getenv("STAKETOW_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for i in [0, n) on a pool. Callers write into slot i only, so
// results do not depend on scheduling.
template <typename F>
void ParallelFor(long n, F&& f) {
  const int threads = static_cast<int>(std::min<long>(ThreadCount(), n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (long i = next++; i < n; i = next++) f(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace staketow

#endif  // STAKETOW_PARALLEL_H_
