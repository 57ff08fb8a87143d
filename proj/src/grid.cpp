#include "noisebench/grid.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace noisebench {

void ExperimentGrid::validate() const {
  if (datasets.empty()) throw Error("grid: no datasets");
  if (learners.empty()) throw Error("grid: no learners");
  if (k < 2) throw Error("grid: K must be >= 2");
  if (r < 1) throw Error("grid: R must be >= 1");
  if (rho_levels.empty()) throw Error("grid: no rho levels");
  if (std::find(rho_levels.begin(), rho_levels.end(), 0.0) == rho_levels.end()) {
    throw Error("grid: rho levels must contain the 0.0 baseline");
  }
  const std::set<std::string> ds(datasets.begin(), datasets.end());
  if (ds.size() != datasets.size()) throw Error("grid: duplicate dataset id");
  const std::set<std::string> ls(learners.begin(), learners.end());
  if (ls.size() != learners.size()) throw Error("grid: duplicate learner id");
  const std::set<double> rs(rho_levels.begin(), rho_levels.end());
  if (rs.size() != rho_levels.size()) throw Error("grid: duplicate rho level");
  for (const double rho : rho_levels) {
    if (rho < 0.0) throw Error("grid: rho must be nonnegative");
  }
}

ExperimentGrid ExperimentGrid::from_json(const nlohmann::json& j) {
  ExperimentGrid grid;
  grid.datasets = j.at("datasets").get<std::vector<std::string>>();
  grid.learners = j.at("learners").get<std::vector<std::string>>();
  grid.k = j.at("k").get<int>();
  grid.r = j.at("r").get<int>();
  grid.rho_levels = j.at("rho_levels").get<std::vector<double>>();
  grid.master_seed = j.value("master_seed", std::uint64_t{0});
  if (j.contains("metrics")) grid.metrics = j.at("metrics").get<std::vector<std::string>>();
  grid.validate();
  return grid;
}

ExperimentGrid ExperimentGrid::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read grid " + path.string());
  return from_json(nlohmann::json::parse(in));
}

nlohmann::json ExperimentGrid::to_json() const {
  return {{"datasets", datasets}, {"learners", learners},     {"k", k},
          {"r", r},               {"rho_levels", rho_levels}, {"master_seed", master_seed},
          {"metrics", metrics}};
}

std::vector<RunCell> expand_grid(const ExperimentGrid& grid) {
  grid.validate();
  std::vector<RunCell> cells;
  cells.reserve(grid.datasets.size() * grid.learners.size() * static_cast<std::size_t>(grid.k) *
                static_cast<std::size_t>(grid.r) * grid.rho_levels.size());
  for (const auto& dataset : grid.datasets) {
    for (const auto& learner : grid.learners) {
      for (int repeat = 0; repeat < grid.r; ++repeat) {
        for (int fold = 0; fold < grid.k; ++fold) {
          for (std::size_t ri = 0; ri < grid.rho_levels.size(); ++ri) {
            cells.push_back({dataset, learner, repeat, fold, grid.rho_levels[ri], ri});
          }
        }
      }
    }
  }
  return cells;
}

}  // namespace noisebench
