#include "noisebench/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace noisebench {

namespace {

std::pair<std::size_t, std::size_t> class_counts(std::span<const std::int8_t> labels) {
  std::size_t pos = 0;
  for (const auto y : labels) {
    if (y == 1) ++pos;
  }
  return {pos, labels.size() - pos};
}

}  // namespace

double auc(std::span<const double> scores, std::span<const std::int8_t> labels) {
  const auto [n_pos, n_neg] = class_counts(labels);
  if (n_pos == 0 || n_neg == 0) throw SingleClassTestSet();

  // Rank-sum formulation with midranks for ties: O(n log n).
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) pos_rank_sum += midrank;
    }
    i = j;
  }
  const double u = pos_rank_sum - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double balanced_accuracy(std::span<const std::int8_t> predictions,
                         std::span<const std::int8_t> labels) {
  const auto [n_pos, n_neg] = class_counts(labels);
  if (n_pos == 0 || n_neg == 0) throw SingleClassTestSet();
  std::size_t tp = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1 && predictions[i] == 1) ++tp;
    if (labels[i] == -1 && predictions[i] == -1) ++tn;
  }
  const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
  const double tnr = static_cast<double>(tn) / static_cast<double>(n_neg);
  return (tpr + tnr) / 2.0;
}

double kappa(std::span<const std::int8_t> predictions, std::span<const std::int8_t> labels) {
  const auto [n_pos, n_neg] = class_counts(labels);
  if (n_pos == 0 || n_neg == 0) throw SingleClassTestSet();
  const double n = static_cast<double>(labels.size());
  std::size_t agree = 0, pred_pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i]) ++agree;
    if (predictions[i] == 1) ++pred_pos;
  }
  const double p0 = static_cast<double>(agree) / n;
  const double true_pos = static_cast<double>(n_pos) / n;
  const double ppos = static_cast<double>(pred_pos) / n;
  const double pe = true_pos * ppos + (1.0 - true_pos) * (1.0 - ppos);
  if (pe >= 1.0) return 0.0;  // both annotators constant and equal
  return (p0 - pe) / (1.0 - pe);
}

double rescale_kappa(double kappa_value) { return kappa_value + 1.0; }

EvalResult evaluate_all(std::span<const double> scores, std::span<const std::int8_t> labels) {
  std::vector<std::int8_t> predictions(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    predictions[i] = scores[i] >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
  }
  EvalResult result;
  const auto [n_pos, n_neg] = class_counts(labels);
  result.n_pos = n_pos;
  result.n_neg = n_neg;
  result.auc = auc(scores, labels);
  result.bacc = balanced_accuracy(predictions, labels);
  result.kappa = kappa(predictions, labels);
  return result;
}

}  // namespace noisebench
