#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noisebench/dataset.hpp"
#include "noisebench/errors.hpp"

namespace noisebench {

class NonFiniteFeature : public Error {
 public:
  NonFiniteFeature() : Error("non-finite value in encoded features") {}
};

// Immutable fitted classifier. score() must be deterministic; the predicted
// class is sign(score) with ties going to +1.
class TrainedModel {
 public:
  virtual ~TrainedModel() = default;
  virtual double score(const Dataset& dataset, std::size_t row) const = 0;
  virtual std::string_view family() const = 0;
  virtual bool converged() const { return true; }

  int predict(const Dataset& dataset, std::size_t row) const {
    return score(dataset, row) >= 0.0 ? +1 : -1;
  }
};

struct LinearConfig {
  enum class Variant { LogisticRegression, SquaredHingeSVC };
  Variant variant = Variant::LogisticRegression;
  double c = 1.0;
  int max_iter = 20000;
  double tol = 1e-5;
  bool fit_intercept = true;
};

struct ForestConfig {
  int n_trees = 100;
  int min_samples_split = 2;  // unlimited depth
  // mtry defaults to ceil(sqrt(p)) when 0
  int mtry = 0;
  bool bootstrap = true;
};

struct BoostConfig {
  std::string loss = "squerr";
  int n_estimators = 100;
  double eta = 0.3;
  double lambda = 1.0;
  double min_child_weight = 0.0;
  int max_depth = 6;
  double base_margin = 0.0;
};

struct SnbConfig {
  int max_bins = 10;
  int min_support = 8;
  int selection_passes = 10;
};

struct LearnerConfig {
  std::string id;
  std::variant<LinearConfig, ForestConfig, BoostConfig, SnbConfig> params;
  std::uint64_t seed = 0;
};

// Named learner roster used in experiment grids: "linearsvc", "logreg",
// "rf", "snb", "gbt_hinge", "gbt_squerr", "gbt_unhinged", "gbt_ramp".
LearnerConfig learner_from_id(std::string_view id, std::uint64_t seed = 0);
bool is_known_learner(std::string_view id);
std::vector<std::string> known_learners();

// Trains the family selected by config.params on the given rows, using
// train_labels (aligned with train_rows) instead of the dataset labels so
// corrupted labels can be injected. Single-class input yields a constant
// model with score = class sign.
std::unique_ptr<TrainedModel> fit(const LearnerConfig& config, const Dataset& dataset,
                                  std::span<const std::size_t> train_rows,
                                  std::span<const std::int8_t> train_labels);

// Scores many rows at once.
std::vector<double> score_rows(const TrainedModel& model, const Dataset& dataset,
                               std::span<const std::size_t> rows);

}  // namespace noisebench
