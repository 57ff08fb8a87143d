#include "noisebench/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace noisebench {

namespace {

void validate(const BoostConfig& config, const LossFn& loss) {
  if (!(config.eta > 0.0 && config.eta <= 1.0)) throw Error("BoostConfig: eta must be in (0,1]");
  if (config.lambda < 0.0) throw Error("BoostConfig: lambda must be >= 0");
  if (config.min_child_weight < 0.0) throw Error("BoostConfig: min_child_weight must be >= 0");
  if (config.max_depth < 0) throw Error("BoostConfig: max_depth must be >= 0");
  if (config.n_estimators < 0) throw Error("BoostConfig: n_estimators must be >= 0");
  if (loss.zero_hessian() && !(config.lambda > 0.0)) throw ZeroHessianZeroLambda();
  if (loss.claimed_symmetric()) {
    // Fail fast if a loss advertised as symmetric is not.
    std::vector<double> margins;
    for (double f = -5.0; f <= 5.0; f += 0.25) margins.push_back(f);
    const auto report = check_symmetry(loss, margins, 1e-9);
    if (!report.symmetric) {
      throw Error("loss '" + loss.name() + "' failed its symmetry certificate");
    }
  }
}

struct RunningStats {
  double g = 0.0;
  double h = 0.0;
  std::size_t count = 0;
  double last_value = 0.0;
};

struct NodeBest {
  double gain = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;
  bool valid = false;
};

double leaf_value(double g, double h, double lambda) { return -g / (h + lambda); }

double gain_term(double g, double h, double lambda) { return g * g / (h + lambda); }

}  // namespace

double GbtTree::leaf_weight(std::span<const double> row) const {
  std::int32_t cur = 0;
  while (!nodes[cur].is_leaf) {
    const auto& node = nodes[cur];
    cur = row[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes[cur].weight;
}

double BoostModel::score(std::span<const double> row) const {
  double margin = base_margin;
  for (const auto& tree : trees) margin += eta * tree.leaf_weight(row);
  return margin;
}

double score_boost(const BoostModel& model, std::span<const double> row) {
  return model.score(row);
}

BoostModel fit_boost(const BoostConfig& config, const EncodedMatrix& features,
                     std::span<const std::int8_t> labels) {
  const LossFn& loss = LossFn::by_name(config.loss);
  validate(config, loss);
  for (const double v : features.values) {
    if (!std::isfinite(v)) throw NonFiniteFeature();
  }

  const std::size_t n = features.rows;
  const std::size_t p = features.cols;
  const double lambda = config.lambda;
  const double mcw = config.min_child_weight;

  BoostModel model;
  model.base_margin = config.base_margin;
  model.eta = config.eta;

  // Presorted row order per feature, shared across rounds.
  std::vector<std::vector<std::uint32_t>> sorted(p);
  for (std::size_t j = 0; j < p; ++j) {
    auto& order = sorted[j];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return features.at(a, j) < features.at(b, j);
    });
  }

  std::vector<double> margins(n, config.base_margin);
  std::vector<double> grad(n), hess(n);
  std::vector<std::int32_t> node_of(n);

  for (int round = 0; round < config.n_estimators; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = loss.grad(margins[i], labels[i]);
      hess[i] = loss.hess(margins[i], labels[i]);
    }

    GbtTree tree;
    tree.nodes.emplace_back();  // root
    std::fill(node_of.begin(), node_of.end(), 0);
    std::vector<std::int32_t> level = {0};
    std::vector<double> node_g = {0.0}, node_h = {0.0};
    node_g[0] = std::accumulate(grad.begin(), grad.end(), 0.0);
    node_h[0] = std::accumulate(hess.begin(), hess.end(), 0.0);

    for (int depth = 0; depth < config.max_depth && !level.empty(); ++depth) {
      std::vector<NodeBest> best(tree.nodes.size());
      std::vector<RunningStats> running(tree.nodes.size());
      std::vector<char> active(tree.nodes.size(), 0);
      for (const auto id : level) active[id] = 1;

      for (std::size_t j = 0; j < p; ++j) {
        for (const auto id : level) running[id] = RunningStats{};
        for (const auto r : sorted[j]) {
          const std::int32_t id = node_of[r];
          if (!active[id]) continue;
          const double v = features.at(r, j);
          auto& st = running[id];
          if (st.count > 0 && v > st.last_value) {
            const double gl = st.g, hl = st.h;
            const double gr = node_g[id] - gl, hr = node_h[id] - hl;
            if (std::min(hl, hr) >= mcw) {
              const double parent = gain_term(gl + gr, hl + hr, lambda);
              const double gain =
                  0.5 * (gain_term(gl, hl, lambda) + gain_term(gr, hr, lambda) - parent);
              if (gain > 1e-12 && (!best[id].valid || gain > best[id].gain)) {
                double threshold = 0.5 * (st.last_value + v);
                if (!(threshold > st.last_value && threshold < v)) threshold = st.last_value;
                best[id] = {gain, j, threshold, true};
              }
            }
          }
          st.g += grad[r];
          st.h += hess[r];
          ++st.count;
          st.last_value = v;
        }
      }

      // Materialize the chosen splits and reassign rows.
      std::vector<std::int32_t> next_level;
      for (const auto id : level) {
        if (!best[id].valid) continue;
        auto& node = tree.nodes[id];
        node.is_leaf = false;
        node.feature = best[id].feature;
        node.threshold = best[id].threshold;
        node.left = static_cast<std::int32_t>(tree.nodes.size());
        node.right = node.left + 1;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        node_g.resize(tree.nodes.size(), 0.0);
        node_h.resize(tree.nodes.size(), 0.0);
        next_level.push_back(node.left);
        next_level.push_back(node.right);
      }
      if (next_level.empty()) break;
      for (std::size_t r = 0; r < n; ++r) {
        const std::int32_t id = node_of[r];
        if (!tree.nodes[id].is_leaf) {
          const auto& node = tree.nodes[id];
          const std::int32_t child =
              features.at(r, node.feature) <= node.threshold ? node.left : node.right;
          node_of[r] = child;
          node_g[child] += grad[r];
          node_h[child] += hess[r];
        }
      }
      level = std::move(next_level);
    }

    // Leaf weights and margin updates.
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
      auto& node = tree.nodes[id];
      if (node.is_leaf) node.weight = leaf_value(node_g[id], node_h[id], lambda);
    }
    for (std::size_t r = 0; r < n; ++r) {
      margins[r] += config.eta * tree.nodes[node_of[r]].weight;
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

namespace {

class BoostTrainedModel final : public TrainedModel {
 public:
  BoostTrainedModel(OneHotEncoder encoder, BoostModel model, std::string family)
      : encoder_(std::move(encoder)), model_(std::move(model)), family_(std::move(family)) {}

  double score(const Dataset& dataset, std::size_t row) const override {
    std::vector<double> encoded(encoder_.n_features());
    encoder_.encode_row(dataset, row, encoded.data());
    return model_.score(encoded);
  }
  std::string_view family() const override { return family_; }

 private:
  OneHotEncoder encoder_;
  BoostModel model_;
  std::string family_;
};

}  // namespace

std::unique_ptr<TrainedModel> fit_boost_model(const BoostConfig& config, const Dataset& dataset,
                                              std::span<const std::size_t> train_rows,
                                              std::span<const std::int8_t> train_labels) {
  OneHotEncoder encoder = OneHotEncoder::fit(dataset, train_rows);
  const EncodedMatrix features = encoder.transform(dataset, train_rows);
  BoostModel model = fit_boost(config, features, train_labels);
  return std::make_unique<BoostTrainedModel>(std::move(encoder), std::move(model),
                                             "gbt_" + config.loss);
}

}  // namespace noisebench
