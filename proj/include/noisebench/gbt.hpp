#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "noisebench/encode.hpp"
#include "noisebench/learn.hpp"
#include "noisebench/losses.hpp"

namespace noisebench {

class ZeroHessianZeroLambda : public Error {
 public:
  ZeroHessianZeroLambda()
      : Error("loss has an identically-zero hessian: lambda must be positive") {}
};

// Regression tree with leaf weights, stored flat. Numeric routing:
// value <= threshold goes left.
struct GbtTree {
  struct Node {
    bool is_leaf = true;
    double weight = 0.0;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };
  std::vector<Node> nodes;

  double leaf_weight(std::span<const double> row) const;
};

struct BoostModel {
  double base_margin = 0.0;
  double eta = 0.3;
  std::vector<GbtTree> trees;

  double score(std::span<const double> row) const;
};

// Second-order boosting with exact greedy splits:
//   gain = 1/2 [ GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l) ]
//   leaf weight w = -G/(H+l)
// A split needs gain > 0 and min(HL, HR) >= min_child_weight. Margins
// update f_i += eta * w after every round.
BoostModel fit_boost(const BoostConfig& config, const EncodedMatrix& features,
                     std::span<const std::int8_t> labels);

double score_boost(const BoostModel& model, std::span<const double> row);

std::unique_ptr<TrainedModel> fit_boost_model(const BoostConfig& config, const Dataset& dataset,
                                              std::span<const std::size_t> train_rows,
                                              std::span<const std::int8_t> train_labels);

}  // namespace noisebench
