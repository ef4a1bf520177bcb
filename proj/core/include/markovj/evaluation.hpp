#pragma once

#include "markovj/cycle_integral.hpp"
#include "markovj/markov_tree.hpp"
#include "markovj/modular_j.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markovj {

enum class OutputFormat { Csv, Json };

/// Settings shared by every command that evaluates cycle integrals.
struct RunConfig {
  int depth = 9;
  double tol = kDefaultQuadTol;
  int series_order = kDefaultSeriesOrder;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::filesystem::path> cache;
  /// 0 picks the hardware concurrency.
  unsigned jobs = 0;
};

/// Throws std::invalid_argument naming the offending field: depth >= 1,
/// 0 < tol <= 1e-4, series_order >= 20.
void validate(const RunConfig& config);

/// Integrates the given nodes on `jobs` threads. The result holds one value per
/// entry of `indices`, in the same order, and does not depend on `jobs`.
std::vector<CycleValue> evaluate_nodes(const MarkovTree& tree, std::span<const std::size_t> indices,
                                       const JSeries& series, double tol, unsigned jobs = 0);

/// Values for every node of the tree, in tree order.
std::vector<CycleValue> evaluate_tree(const MarkovTree& tree, const JSeries& series, double tol,
                                      unsigned jobs = 0);

}  // namespace markovj
