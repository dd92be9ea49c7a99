#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fraclob {

// Runs the jobs on up to `threads` workers. Results land in the slot of the
// job that produced them, so the returned vector is identical for any pool
// size; only wall time changes.
template <typename R>
std::vector<R> run_parallel(int threads, const std::vector<std::function<R()>>& jobs) {
  std::vector<R> results(jobs.size());
  if (threads < 1) threads = 1;
  if (threads == 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      results[i] = jobs[i]();
    }
  };
  std::vector<std::thread> ts;
  std::size_t n = std::min<std::size_t>(threads, jobs.size());
  ts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) ts.emplace_back(worker);
  for (auto& t : ts) t.join();
  return results;
}

}  // namespace fraclob
