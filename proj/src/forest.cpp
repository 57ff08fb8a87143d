#include "noisebench/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace noisebench {

namespace {

double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

struct SplitChoice {
  bool found = false;
  double gain = 0.0;
  std::size_t feature = 0;
  bool numeric = true;
  double threshold = 0.0;
  std::uint32_t category = 0;
};

struct NodeData {
  std::vector<std::size_t> rows;     // dataset row ids (with bootstrap repeats)
  std::vector<std::int8_t> labels;   // aligned with rows
};

std::unique_ptr<TreeNode> grow(const Dataset& dataset, NodeData node, const ForestConfig& config,
                               std::size_t mtry, Rng& rng) {
  auto tree = std::make_unique<TreeNode>();
  const std::size_t n = node.rows.size();
  std::size_t pos = 0;
  for (const auto y : node.labels) {
    if (y == 1) ++pos;
  }
  tree->positive_fraction = static_cast<double>(pos) / static_cast<double>(n);

  const std::size_t p = dataset.columns().size();
  if (pos == 0 || pos == n || n < static_cast<std::size_t>(config.min_samples_split) || p == 0) {
    return tree;
  }

  auto candidates = rng.sample_without_replacement(p, mtry);
  std::sort(candidates.begin(), candidates.end());  // lowest-index tie-break

  const double parent_impurity = gini(pos, n);
  SplitChoice best;

  std::vector<std::pair<double, std::int8_t>> sorted;  // numeric scratch
  for (const auto feature : candidates) {
    const auto& col = dataset.columns()[feature];
    if (col.kind == ColumnKind::Numeric) {
      sorted.clear();
      for (std::size_t i = 0; i < n; ++i) {
        sorted.emplace_back(dataset.numeric_value(node.rows[i], col.storage_index),
                            node.labels[i]);
      }
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_n;
        if (sorted[i].second == 1) ++left_pos;
        if (sorted[i].first == sorted[i + 1].first) continue;
        const double threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
        const std::size_t right_n = n - left_n;
        const std::size_t right_pos = pos - left_pos;
        const double child =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(right_pos, right_n)) /
            static_cast<double>(n);
        const double gain = parent_impurity - child;
        if (gain > best.gain + 1e-15) {
          best = {true, gain, feature, true, threshold, 0};
        }
      }
    } else {
      // One-vs-rest split on each category present at the node.
      std::vector<std::uint32_t> present;
      std::vector<std::size_t> count, count_pos;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t code = dataset.categorical_value(node.rows[i], col.storage_index);
        auto it = std::find(present.begin(), present.end(), code);
        std::size_t k;
        if (it == present.end()) {
          k = present.size();
          present.push_back(code);
          count.push_back(0);
          count_pos.push_back(0);
        } else {
          k = static_cast<std::size_t>(it - present.begin());
        }
        ++count[k];
        if (node.labels[i] == 1) ++count_pos[k];
      }
      if (present.size() < 2) continue;
      // Ascending category order keeps the tie-break deterministic.
      std::vector<std::size_t> order(present.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return present[a] < present[b]; });
      for (const auto k : order) {
        const std::size_t left_n = count[k];
        const std::size_t left_pos = count_pos[k];
        const std::size_t right_n = n - left_n;
        const std::size_t right_pos = pos - left_pos;
        if (left_n == 0 || right_n == 0) continue;
        const double child =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(right_pos, right_n)) /
            static_cast<double>(n);
        const double gain = parent_impurity - child;
        if (gain > best.gain + 1e-15) {
          best = {true, gain, feature, false, 0.0, present[k]};
        }
      }
    }
  }

  if (!best.found) return tree;

  NodeData left, right;
  const auto& col = dataset.columns()[best.feature];
  for (std::size_t i = 0; i < n; ++i) {
    const bool go_left =
        best.numeric
            ? dataset.numeric_value(node.rows[i], col.storage_index) <= best.threshold
            : dataset.categorical_value(node.rows[i], col.storage_index) == best.category;
    auto& side = go_left ? left : right;
    side.rows.push_back(node.rows[i]);
    side.labels.push_back(node.labels[i]);
  }
  node.rows.clear();
  node.labels.clear();

  tree->is_leaf = false;
  tree->numeric_split = best.numeric;
  tree->feature = best.feature;
  tree->threshold = best.threshold;
  tree->category = best.category;
  tree->left = grow(dataset, std::move(left), config, mtry, rng);
  tree->right = grow(dataset, std::move(right), config, mtry, rng);
  return tree;
}

}  // namespace

std::unique_ptr<TreeNode> grow_tree(const Dataset& dataset, std::span<const std::size_t> rows,
                                    std::span<const std::int8_t> labels,
                                    const ForestConfig& config, Rng& rng) {
  if (rows.empty()) throw Error("grow_tree needs at least one row");
  if (config.min_samples_split < 2) throw Error("ForestConfig: min_samples_split must be >= 2");
  const std::size_t p = dataset.columns().size();
  const std::size_t mtry =
      config.mtry > 0 ? static_cast<std::size_t>(config.mtry)
                      : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
  NodeData node;
  node.rows.assign(rows.begin(), rows.end());
  node.labels.assign(labels.begin(), labels.end());
  return grow(dataset, std::move(node), config, std::min(mtry, p), rng);
}

double tree_positive_fraction(const TreeNode& node, const Dataset& dataset, std::size_t row) {
  const TreeNode* cur = &node;
  while (!cur->is_leaf) {
    const auto& col = dataset.columns()[cur->feature];
    const bool go_left =
        cur->numeric_split
            ? dataset.numeric_value(row, col.storage_index) <= cur->threshold
            : dataset.categorical_value(row, col.storage_index) == cur->category;
    cur = go_left ? cur->left.get() : cur->right.get();
  }
  return cur->positive_fraction;
}

double ForestModel::score(const Dataset& dataset, std::size_t row) const {
  double sum = 0.0;
  for (const auto& tree : trees) sum += tree_positive_fraction(*tree, dataset, row);
  const double mean = sum / static_cast<double>(trees.size());
  return 2.0 * mean - 1.0;
}

ForestModel fit_forest(const ForestConfig& config, const Dataset& dataset,
                       std::span<const std::size_t> train_rows,
                       std::span<const std::int8_t> train_labels, std::uint64_t seed) {
  if (config.n_trees < 1) throw Error("ForestConfig: n_trees must be >= 1");
  ForestModel model;
  const std::size_t n = train_rows.size();
  for (int t = 0; t < config.n_trees; ++t) {
    Rng rng(SeedMix(seed).mix("tree").mix(static_cast<std::uint64_t>(t)).value());
    std::vector<std::size_t> rows;
    std::vector<std::int8_t> labels;
    rows.reserve(n);
    labels.reserve(n);
    if (config.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(rng.below(n));
        rows.push_back(train_rows[k]);
        labels.push_back(train_labels[k]);
      }
    } else {
      rows.assign(train_rows.begin(), train_rows.end());
      labels.assign(train_labels.begin(), train_labels.end());
    }
    model.trees.push_back(grow_tree(dataset, rows, labels, config, rng));
  }
  return model;
}

namespace {

class ForestTrainedModel final : public TrainedModel {
 public:
  explicit ForestTrainedModel(ForestModel model) : model_(std::move(model)) {}
  double score(const Dataset& dataset, std::size_t row) const override {
    return model_.score(dataset, row);
  }
  std::string_view family() const override { return "rf"; }

 private:
  ForestModel model_;
};

}  // namespace

std::unique_ptr<TrainedModel> fit_forest_model(const ForestConfig& config, const Dataset& dataset,
                                               std::span<const std::size_t> train_rows,
                                               std::span<const std::int8_t> train_labels,
                                               std::uint64_t seed) {
  return std::make_unique<ForestTrainedModel>(
      fit_forest(config, dataset, train_rows, train_labels, seed));
}

}  // namespace noisebench
