#include "gsk/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace gsk {

int thread_budget() {
  if (const char* env = std::getenv("SKL_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for_index(int total, const std::function<void(int)>& work) {
  int workers = std::min(thread_budget(), total);
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mtx;
  auto loop = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= total) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mtx);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(loop);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void parallel_chunks(int total, const std::function<void(int, int, int)>& work,
                     int* chunk_count) {
  int workers = std::min(thread_budget(), total);
  if (workers < 1) workers = 1;
  *chunk_count = workers;
  if (workers == 1) {
    work(0, total, 0);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mtx;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int c = 0; c < workers; ++c) {
    int begin = static_cast<int>(static_cast<long long>(total) * c / workers);
    int end = static_cast<int>(static_cast<long long>(total) * (c + 1) / workers);
    pool.emplace_back([&, begin, end, c] {
      try {
        work(begin, end, c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mtx);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gsk
