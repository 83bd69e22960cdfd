#include "repcut/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace repcut {
namespace {

std::atomic<int> g_thread_limit{0};
thread_local bool t_inside_worker = false;

int env_threads() {
  if (const char* env = std::getenv("REPCUT_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return 0;
}

}  // namespace

int thread_count() {
  if (const int limit = g_thread_limit.load(); limit > 0) return limit;
  if (const int env = env_threads(); env > 0) return env;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_limit(int threads) { g_thread_limit.store(std::max(0, threads)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(thread_count()));
  if (workers <= 1 || t_inside_worker) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      t_inside_worker = true;
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace repcut
