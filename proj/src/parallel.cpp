#include "gmt/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace gmt::parallel {

namespace {
std::atomic<unsigned> g_threads{0};
// Nested calls from inside a worker run inline instead of spawning more threads.
thread_local bool t_in_worker = false;
}

void set_threads(unsigned n) { g_threads.store(n); }

unsigned threads() {
  const unsigned n = g_threads.load();
  if (n) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(threads(), n);
  if (workers <= 1 || t_in_worker) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    const bool was = t_in_worker;
    t_in_worker = true;
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
    t_in_worker = was;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gmt::parallel
