#include "noisebench/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "noisebench/rng.hpp"

namespace noisebench {

std::vector<std::size_t> SplitPlan::test_rows(int repeat, int fold) const {
  std::vector<std::size_t> rows;
  const auto& a = assignments[repeat];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> SplitPlan::train_rows(int repeat, int fold) const {
  std::vector<std::size_t> rows;
  const auto& a = assignments[repeat];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != fold) rows.push_back(i);
  }
  return rows;
}

SplitPlan make_split_plan(const Dataset& dataset, int k, int r, std::uint64_t master_seed) {
  if (k < 2) throw Error("K must be at least 2");
  if (r < 1) throw Error("R must be at least 1");
  const auto labels = dataset.labels();
  const std::size_t n = labels.size();

  std::vector<std::size_t> pos_rows, neg_rows;
  for (std::size_t i = 0; i < n; ++i) {
    (labels[i] == 1 ? pos_rows : neg_rows).push_back(i);
  }
  if (pos_rows.size() < static_cast<std::size_t>(k)) {
    throw ClassTooSmall(+1, pos_rows.size(), k);
  }
  if (neg_rows.size() < static_cast<std::size_t>(k)) {
    throw ClassTooSmall(-1, neg_rows.size(), k);
  }

  SplitPlan plan;
  plan.dataset_id = dataset.id();
  plan.k = k;
  plan.r = r;
  plan.master_seed = master_seed;
  plan.assignments.resize(r);

  for (int repeat = 0; repeat < r; ++repeat) {
    auto& assignment = plan.assignments[repeat];
    assignment.assign(n, 0);
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<std::size_t> rows = cls == 0 ? pos_rows : neg_rows;
      Rng rng(SeedMix(master_seed)
                  .mix(plan.dataset_id)
                  .mix("split")
                  .mix(static_cast<std::uint64_t>(repeat))
                  .mix(static_cast<std::uint64_t>(cls))
                  .value());
      rng.shuffle(rows);
      // Round-robin deal; remainder lands in the lowest-index folds.
      for (std::size_t i = 0; i < rows.size(); ++i) {
        assignment[rows[i]] = static_cast<std::uint8_t>(i % k);
      }
    }
  }
  return plan;
}

nlohmann::json split_plan_to_json(const SplitPlan& plan) {
  nlohmann::json j;
  j["dataset"] = plan.dataset_id;
  j["k"] = plan.k;
  j["r"] = plan.r;
  j["master_seed"] = plan.master_seed;
  auto& reps = j["assignments"] = nlohmann::json::array();
  for (const auto& a : plan.assignments) {
    reps.push_back(std::vector<int>(a.begin(), a.end()));
  }
  return j;
}

double effective_noise(double rho, double minority_fraction) {
  if (rho < 0.0) throw Error("rho must be nonnegative");
  if (!(minority_fraction > 0.0) || minority_fraction > 0.5) {
    throw Error("minority_fraction must be in (0, 0.5]");
  }
  return std::min(1.0, rho * minority_fraction);
}

NoiseSpec NoiseSpec::make(double rho, double minority_fraction, std::size_t n_train,
                          std::uint64_t seed) {
  NoiseSpec spec;
  spec.rho = rho;
  spec.effective_rate = effective_noise(rho, minority_fraction);
  spec.flip_count =
      static_cast<std::size_t>(std::floor(spec.effective_rate * static_cast<double>(n_train) + 0.5));
  spec.seed = seed;
  return spec;
}

CorruptionResult corrupt_labels(std::span<const std::int8_t> labels, const NoiseSpec& spec) {
  if (spec.flip_count > labels.size()) {
    throw Error("flip_count exceeds the number of training labels");
  }
  CorruptionResult result;
  result.labels.assign(labels.begin(), labels.end());
  Rng rng(spec.seed);
  result.flipped = rng.sample_without_replacement(labels.size(), spec.flip_count);
  std::sort(result.flipped.begin(), result.flipped.end());
  for (const auto i : result.flipped) {
    result.labels[i] = static_cast<std::int8_t>(-result.labels[i]);
  }
  return result;
}

}  // namespace noisebench
