#pragma once

#include <memory>
#include <span>
#include <vector>

#include "noisebench/encode.hpp"
#include "noisebench/learn.hpp"

namespace noisebench {

class NonFiniteObjective : public Error {
 public:
  NonFiniteObjective() : Error("linear objective became non-finite (encoding bug?)") {}
};

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Minimizes 0.5 ||w||^2 + C * sum_i l(y_i (w.x_i + b)) in the primal with
// an L-BFGS(10) + Armijo backtracking solver; the intercept is not
// regularized. l is the logistic loss or the squared hinge, per variant.
LinearModel fit_linear(const LinearConfig& config, const EncodedMatrix& features,
                       std::span<const std::int8_t> labels);

double score_linear(const LinearModel& model, std::span<const double> row);

// TrainedModel wrapper owning the encoder fitted on the training split.
std::unique_ptr<TrainedModel> fit_linear_model(const LinearConfig& config, const Dataset& dataset,
                                               std::span<const std::size_t> train_rows,
                                               std::span<const std::int8_t> train_labels);

}  // namespace noisebench
