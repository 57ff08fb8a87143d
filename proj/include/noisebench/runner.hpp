#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisebench/dataset.hpp"
#include "noisebench/grid.hpp"
#include "noisebench/sampling.hpp"

namespace noisebench {

class OutputUnwritable : public Error {
 public:
  explicit OutputUnwritable(const std::string& path)
      : Error("cannot write run output to " + path) {}
};

class SchemaMismatch : public Error {
 public:
  explicit SchemaMismatch(const std::string& detail) : Error("schema mismatch: " + detail) {}
};

struct MetricSet {
  std::optional<double> auc;
  std::optional<double> bacc;
  std::optional<double> kappa;

  bool operator==(const MetricSet&) const = default;
};

// One (dataset, learner, repeat, fold, rho) result row. Test metrics are
// always computed against uncorrupted test labels.
struct RunRecord {
  int v = 1;
  std::string dataset;
  std::string learner;
  int repeat = 0;
  int fold = 0;
  double rho = 0.0;
  double effective_rate = 0.0;
  std::size_t flip_count = 0;
  std::uint64_t seed = 0;                // learner seed stream
  std::vector<std::size_t> flipped;      // dataset row ids whose label was flipped
  std::uint64_t fold_hash = 0;           // hash of the test fold membership
  MetricSet train;
  MetricSet test;
  bool converged = true;
  std::string status = "ok";             // "ok" or "failed"
  std::string error;
  double wall_time = 0.0;                // seconds; excluded from determinism checks
};

nlohmann::json record_to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

// Reads a JSONL results file; throws SchemaMismatch on records with an
// unexpected version.
std::vector<RunRecord> read_records(const std::filesystem::path& path);

// Noise seeds deliberately ignore the learner so that every learner in a
// cell group trains on the same corrupted labels.
std::uint64_t noise_seed(std::uint64_t master_seed, const std::string& dataset_id, int repeat,
                         int fold, std::size_t rho_index);
std::uint64_t learner_seed(std::uint64_t master_seed, const std::string& dataset_id,
                           const std::string& learner_id, int repeat, int fold,
                           std::size_t rho_index);

// Trains on the corrupted train fold and evaluates train (corrupted labels)
// and test (clean labels). Learner errors become status = "failed" records.
RunRecord execute_cell(const RunCell& cell, const Dataset& dataset, const SplitPlan& plan,
                       const ExperimentGrid& grid);

struct RunSummary {
  std::size_t completed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

// Executes every grid cell over `workers` threads with append-only JSONL
// persistence; with resume, cells already present in the output are skipped.
RunSummary run_grid(const ExperimentGrid& grid, const std::map<std::string, Dataset>& datasets,
                    int workers, const std::filesystem::path& out_path, bool resume);

}  // namespace noisebench
