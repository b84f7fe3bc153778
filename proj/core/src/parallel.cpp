#include "horobm/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace horobm {

int worker_count() {
  if (const char *env = std::getenv("HOROBM_THREADS")) {
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, int)> &fn) {
  int workers = worker_count();
  if (workers <= 1 || n < 2) {
    fn(0, n, 0);
    return;
  }
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end, w);
  }
  for (auto &t : pool) t.join();
}

}  // namespace horobm
