#include "rcq/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace rcq {

unsigned worker_count_from_env() {
  if (const char* env = std::getenv("RCQ_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void run_trials(std::size_t count, unsigned workers,
                const std::function<void(std::size_t)>& fn) {
  if (workers == 0) {
    workers = worker_count_from_env();
  }
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error = nullptr;
  std::atomic<bool> failed{false};
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) {
          error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawned = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  pool.reserve(spawned);
  for (unsigned w = 0; w < spawned; ++w) {
    pool.emplace_back(body);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failed.load() && error) {
    std::rethrow_exception(error);
  }
}

}  // namespace rcq
