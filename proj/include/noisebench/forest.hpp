#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "noisebench/learn.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

// CART node. Numeric splits send rows with value <= threshold left;
// categorical splits send rows matching the single category left.
struct TreeNode {
  bool is_leaf = true;
  double positive_fraction = 0.0;

  bool numeric_split = true;
  std::size_t feature = 0;      // index into Dataset::columns()
  double threshold = 0.0;       // numeric splits
  std::uint32_t category = 0;   // categorical one-vs-rest splits
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
};

// Grows a CART tree with Gini impurity reduction; mtry candidate features
// are drawn without replacement at every node. Works on raw typed columns.
std::unique_ptr<TreeNode> grow_tree(const Dataset& dataset, std::span<const std::size_t> rows,
                                    std::span<const std::int8_t> labels, const ForestConfig& config,
                                    Rng& rng);

// Leaf positive fraction for one row.
double tree_positive_fraction(const TreeNode& node, const Dataset& dataset, std::size_t row);

struct ForestModel {
  std::vector<std::unique_ptr<TreeNode>> trees;

  // Mean leaf positive fraction mapped to a margin in [-1, +1].
  double score(const Dataset& dataset, std::size_t row) const;
};

// Bagged forest: each tree fits an n-draw bootstrap resample whose RNG
// stream derives from (seed, tree_index).
ForestModel fit_forest(const ForestConfig& config, const Dataset& dataset,
                       std::span<const std::size_t> train_rows,
                       std::span<const std::int8_t> train_labels, std::uint64_t seed);

std::unique_ptr<TrainedModel> fit_forest_model(const ForestConfig& config, const Dataset& dataset,
                                               std::span<const std::size_t> train_rows,
                                               std::span<const std::int8_t> train_labels,
                                               std::uint64_t seed);

}  // namespace noisebench
