#include "markovj/evaluation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace markovj {

void validate(const RunConfig& config) {
  if (config.depth < 1) {
    throw std::invalid_argument(fmt::format("depth must be >= 1, got {}", config.depth));
  }
  if (!(config.tol > 0.0) || config.tol > 1e-4) {
    throw std::invalid_argument(fmt::format("tol must be in (0, 1e-4], got {}", config.tol));
  }
  if (config.series_order < 20) {
    throw std::invalid_argument(
        fmt::format("series order must be >= 20, got {}", config.series_order));
  }
}

std::vector<CycleValue> evaluate_nodes(const MarkovTree& tree, std::span<const std::size_t> indices,
                                       const JSeries& series, double tol, unsigned jobs) {
  std::vector<CycleValue> out(indices.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, indices.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < indices.size(); i = next++) {
      try {
        out[i] = integrate_J(tree[indices[i]], series, tol);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = indices.size();
      }
    }
  };

  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<CycleValue> evaluate_tree(const MarkovTree& tree, const JSeries& series, double tol,
                                      unsigned jobs) {
  std::vector<std::size_t> all(tree.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return evaluate_nodes(tree, all, series, tol, jobs);
}

}  // namespace markovj
