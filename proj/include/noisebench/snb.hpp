#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "noisebench/learn.hpp"

namespace noisebench {

// Supervised discretization: starts from max_bins equal-frequency bins and
// greedily merges the adjacent pair that most improves
//   BIC = sum_i log P(y_i | bin(x_i)) - 1/2 (#bins - 1)(#classes - 1) log n
// with #classes fixed at 2. Returns interior cut points; bin i covers
// (cut[i-1], cut[i]].
std::vector<double> discretize_numeric(std::span<const double> values,
                                       std::span<const std::int8_t> labels, int max_bins = 10);

std::size_t bin_of(std::span<const double> cuts, double value);

// Training values with support below min_support pool into a shared
// "__OTHER__" group; the rest keep singleton groups. The other-group exists
// even when empty so unseen codes always map somewhere.
struct CategoryGrouping {
  std::vector<std::uint32_t> group_of_code;  // indexed by category code
  std::size_t n_groups = 0;
  std::uint32_t other_group = 0;

  std::uint32_t group(std::uint32_t code) const {
    return code < group_of_code.size() ? group_of_code[code] : other_group;
  }
};

CategoryGrouping group_categorical(std::span<const std::uint32_t> codes, std::size_t n_codes,
                                   std::span<const std::int8_t> labels, int min_support = 8);

// Per-feature partition with Laplace-smoothed class conditionals and a
// selection weight in [0,1].
struct SnbFeature {
  std::size_t column = 0;  // index into Dataset::columns()
  bool numeric = true;
  std::vector<double> cuts;
  CategoryGrouping grouping;
  std::size_t n_parts = 1;
  std::vector<double> logp_pos;  // log P(part | +1), Laplace add-1
  std::vector<double> logp_neg;
  double weight = 0.0;

  std::size_t part(const Dataset& dataset, std::size_t row) const;
};

struct SnbModel {
  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  std::vector<SnbFeature> features;

  // Weighted log-posterior ratio log P(+1|x) - log P(-1|x); the shared
  // normalizer cancels.
  double score(const Dataset& dataset, std::size_t row) const;
};

// Runs `selection_passes` randomized greedy forward-selection passes over a
// BIC-penalized train log-likelihood; a feature's weight is the fraction of
// passes that selected it.
SnbModel fit_snb(const SnbConfig& config, const Dataset& dataset,
                 std::span<const std::size_t> train_rows,
                 std::span<const std::int8_t> train_labels, std::uint64_t seed);

std::unique_ptr<TrainedModel> fit_snb_model(const SnbConfig& config, const Dataset& dataset,
                                            std::span<const std::size_t> train_rows,
                                            std::span<const std::int8_t> train_labels,
                                            std::uint64_t seed);

}  // namespace noisebench
