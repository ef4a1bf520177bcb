#pragma once

#include "markovj/cycle_integral.hpp"
#include "markovj/evaluation.hpp"
#include "markovj/markov_tree.hpp"
#include "markovj/modular_j.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace markovj {

/// A cache file that exists but cannot be trusted: unreadable, malformed, or
/// with a record that fails its checksum or disagrees with the tree.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Records keyed by tree path.
using CacheRecords = std::map<std::string, CycleValue>;

/// Reads a JSON-lines cache. Returns nullopt if the file does not exist or was
/// written with a different tol or series order; throws CacheError otherwise
/// when anything fails validation.
std::optional<CacheRecords> read_cache(const std::filesystem::path& file, double tol,
                                       int series_order);

/// Writes all records, ordered by (level, path), via a temporary file and rename.
void write_cache(const std::filesystem::path& file, const CacheRecords& records, double tol,
                 int series_order);

struct CacheStats {
  std::size_t reused = 0;
  std::size_t computed = 0;
  bool stale = false;
};

/// evaluate_tree backed by config.cache when set: cached records are reused,
/// the rest are computed and the file is rewritten if anything new was added.
std::vector<CycleValue> evaluate_tree_cached(const MarkovTree& tree, const JSeries& series,
                                             const RunConfig& config, CacheStats* stats = nullptr);

}  // namespace markovj
