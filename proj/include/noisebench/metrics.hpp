#pragma once

#include <cstdint>
#include <span>

#include "noisebench/errors.hpp"

namespace noisebench {

class SingleClassTestSet : public Error {
 public:
  SingleClassTestSet() : Error("metric undefined: labels contain a single class") {}
};

struct EvalResult {
  double auc = 0.0;
  double bacc = 0.0;
  double kappa = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

// Mann-Whitney AUC: P(score+ > score-) + 0.5 * P(score+ = score-).
double auc(std::span<const double> scores, std::span<const std::int8_t> labels);

// (TPR + TNR) / 2 over {-1,+1} predictions.
double balanced_accuracy(std::span<const std::int8_t> predictions,
                         std::span<const std::int8_t> labels);

// Cohen's kappa (p0 - pe) / (1 - pe); returns 0 when pe == 1 (both
// annotators constant and identical).
double kappa(std::span<const std::int8_t> predictions, std::span<const std::int8_t> labels);

// Shift from [-1,1] to [0,2] for retained-performance ratios.
double rescale_kappa(double kappa_value);

// All three metrics from raw scores; predictions are sign(score),
// ties to +1.
EvalResult evaluate_all(std::span<const double> scores, std::span<const std::int8_t> labels);

}  // namespace noisebench
