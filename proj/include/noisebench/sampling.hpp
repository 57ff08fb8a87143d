#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisebench/dataset.hpp"
#include "noisebench/errors.hpp"

namespace noisebench {

class ClassTooSmall : public Error {
 public:
  ClassTooSmall(int label, std::size_t count, int k)
      : Error("class " + std::to_string(label) + " has " + std::to_string(count) +
              " members, fewer than K=" + std::to_string(k)) {}
};

// Deterministic assignment of rows to K stratified folds, repeated R times.
struct SplitPlan {
  std::string dataset_id;
  int k = 0;
  int r = 0;
  std::uint64_t master_seed = 0;
  // assignments[repeat][row] = fold index in [0, K)
  std::vector<std::vector<std::uint8_t>> assignments;

  std::vector<std::size_t> test_rows(int repeat, int fold) const;
  std::vector<std::size_t> train_rows(int repeat, int fold) const;
};

// Shuffles each class with a repeat-specific seed and deals members
// round-robin into K folds, so per-class fold counts differ by at most one.
SplitPlan make_split_plan(const Dataset& dataset, int k, int r, std::uint64_t master_seed);

nlohmann::json split_plan_to_json(const SplitPlan& plan);

// min(1, rho * minority_fraction).
double effective_noise(double rho, double minority_fraction);

struct NoiseSpec {
  double rho = 0.0;
  double effective_rate = 0.0;
  std::size_t flip_count = 0;
  std::uint64_t seed = 0;

  static NoiseSpec make(double rho, double minority_fraction, std::size_t n_train,
                        std::uint64_t seed);
};

struct CorruptionResult {
  std::vector<std::int8_t> labels;
  std::vector<std::size_t> flipped;  // sorted positions into the input vector
};

// Negates the labels at exactly flip_count positions drawn uniformly
// without replacement.
CorruptionResult corrupt_labels(std::span<const std::int8_t> labels, const NoiseSpec& spec);

}  // namespace noisebench
