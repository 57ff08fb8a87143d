#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "noisebench/dataset.hpp"
#include "noisebench/errors.hpp"

namespace noisebench {

class ChecksumMismatch : public Error {
 public:
  ChecksumMismatch(const std::string& path, const std::string& expected, const std::string& got)
      : Error("checksum mismatch for " + path + ": expected " + expected + ", got " + got) {}
};

class DownloadFailed : public Error {
 public:
  DownloadFailed(const std::string& url, int status)
      : Error("download failed for " + url + " (status " + std::to_string(status) + ")"),
        status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

enum class DataFormat { Csv, Arff };

struct ManifestEntry {
  std::string id;
  std::string source_url;  // https://, http://, file:// or builtin:<name>
  std::string checksum;    // "sha256:<hex>"; required unless builtin
  DataFormat format = DataFormat::Csv;
  std::string label_column;
  std::string positive_value;
  std::vector<std::string> dropped_columns;
  char delimiter = ',';
  bool header = true;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;

  static DatasetManifest from_json(const nlohmann::json& j);
  static DatasetManifest load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const ManifestEntry& entry(std::string_view id) const;
};

// Hex digest, lowercase.
std::string sha256_hex(std::string_view bytes);

// Ensures the raw dataset file is present in <cache>/<id>/raw.<ext> and
// matches the entry checksum; reuses a valid cached copy without touching
// the network. Concurrent fetchers serialize on <cache>/.lock.
std::filesystem::path fetch(const ManifestEntry& entry, const std::filesystem::path& cache_dir);

// fetch + parse + standardize + persist to <cache>/<id>/dataset.bin with a
// schema.json sidecar; an existing cache entry is loaded, not recomputed.
Dataset prepare_dataset(const ManifestEntry& entry, const std::filesystem::path& cache_dir);

}  // namespace noisebench
