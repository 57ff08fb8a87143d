#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisebench/errors.hpp"

namespace noisebench {

// The full experiment grid: every (dataset, learner, repeat, fold, rho)
// combination is one run cell.
struct ExperimentGrid {
  std::vector<std::string> datasets;
  std::vector<std::string> learners;
  int k = 5;
  int r = 5;
  std::vector<double> rho_levels;
  std::uint64_t master_seed = 0;
  std::vector<std::string> metrics = {"auc", "bacc", "kappa"};

  // Checks k/r bounds, uniqueness and the rho = 0 baseline requirement.
  void validate() const;

  static ExperimentGrid from_json(const nlohmann::json& j);
  static ExperimentGrid load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct RunCell {
  std::string dataset;
  std::string learner;
  int repeat = 0;
  int fold = 0;
  double rho = 0.0;
  std::size_t rho_index = 0;
};

// Deterministic (dataset, learner, repeat, fold, rho) order.
std::vector<RunCell> expand_grid(const ExperimentGrid& grid);

}  // namespace noisebench
