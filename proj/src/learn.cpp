#include "noisebench/learn.hpp"

#include <algorithm>

#include "noisebench/forest.hpp"
#include "noisebench/gbt.hpp"
#include "noisebench/linear.hpp"
#include "noisebench/snb.hpp"

namespace noisebench {

namespace {

// Degenerate single-class training collapses to a constant classifier.
class ConstantModel final : public TrainedModel {
 public:
  explicit ConstantModel(int sign) : score_(sign) {}
  double score(const Dataset&, std::size_t) const override { return score_; }
  std::string_view family() const override { return "constant"; }

 private:
  double score_;
};

}  // namespace

LearnerConfig learner_from_id(std::string_view id, std::uint64_t seed) {
  LearnerConfig config;
  config.id = std::string(id);
  config.seed = seed;
  if (id == "logreg") {
    config.params = LinearConfig{LinearConfig::Variant::LogisticRegression};
  } else if (id == "linearsvc") {
    config.params = LinearConfig{LinearConfig::Variant::SquaredHingeSVC};
  } else if (id == "rf") {
    config.params = ForestConfig{};
  } else if (id == "snb") {
    config.params = SnbConfig{};
  } else if (id == "gbt_hinge" || id == "gbt_squerr" || id == "gbt_unhinged" ||
             id == "gbt_ramp") {
    BoostConfig boost;
    boost.loss = std::string(id.substr(4));
    LossFn::by_name(boost.loss);  // validates
    config.params = boost;
  } else {
    throw Error("unknown learner id '" + std::string(id) + "'");
  }
  return config;
}

bool is_known_learner(std::string_view id) {
  const auto ids = known_learners();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::string> known_learners() {
  return {"linearsvc", "logreg",       "rf",          "snb",
          "gbt_hinge", "gbt_squerr",   "gbt_unhinged", "gbt_ramp"};
}

std::unique_ptr<TrainedModel> fit(const LearnerConfig& config, const Dataset& dataset,
                                  std::span<const std::size_t> train_rows,
                                  std::span<const std::int8_t> train_labels) {
  if (train_rows.empty()) throw Error("fit needs at least one training row");
  if (train_rows.size() != train_labels.size()) {
    throw Error("train_rows and train_labels must be aligned");
  }
  for (const auto y : train_labels) {
    if (y != 1 && y != -1) throw Error("training labels must be in {-1,+1}");
  }

  const bool any_pos = std::any_of(train_labels.begin(), train_labels.end(),
                                   [](std::int8_t y) { return y == 1; });
  const bool any_neg = std::any_of(train_labels.begin(), train_labels.end(),
                                   [](std::int8_t y) { return y == -1; });
  if (!any_pos || !any_neg) {
    return std::make_unique<ConstantModel>(any_pos ? +1 : -1);
  }

  return std::visit(
      [&](const auto& params) -> std::unique_ptr<TrainedModel> {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, LinearConfig>) {
          return fit_linear_model(params, dataset, train_rows, train_labels);
        } else if constexpr (std::is_same_v<T, ForestConfig>) {
          return fit_forest_model(params, dataset, train_rows, train_labels, config.seed);
        } else if constexpr (std::is_same_v<T, BoostConfig>) {
          return fit_boost_model(params, dataset, train_rows, train_labels);
        } else {
          return fit_snb_model(params, dataset, train_rows, train_labels, config.seed);
        }
      },
      config.params);
}

std::vector<double> score_rows(const TrainedModel& model, const Dataset& dataset,
                               std::span<const std::size_t> rows) {
  std::vector<double> scores(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) scores[i] = model.score(dataset, rows[i]);
  return scores;
}

}  // namespace noisebench
