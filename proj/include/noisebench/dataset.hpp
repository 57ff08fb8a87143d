#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/table.hpp"

namespace noisebench {

class SingleClassDataset : public Error {
 public:
  explicit SingleClassDataset(const std::string& id)
      : Error("dataset '" + id + "' contains a single label class") {}
};

class LabelColumnMissing : public Error {
 public:
  explicit LabelColumnMissing(const std::string& column)
      : Error("label column '" + column + "' not found") {}
};

class AllMissingColumn : public Error {
 public:
  explicit AllMissingColumn(const std::string& column)
      : Error("numeric column '" + column + "' has no observed values"), name_(column) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct ColumnSchema {
  enum class MissingPolicy { MeanImpute, OwnCategory };

  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  MissingPolicy missing_policy = MissingPolicy::MeanImpute;
  std::size_t storage_index = 0;  // into the numeric or categorical block

  bool operator==(const ColumnSchema&) const = default;
};

// Code assigned to missing categorical cells.
inline constexpr const char* kMissingCategory = "__MISSING__";

// Immutable typed tabular data with labels standardized to {-1,+1}.
// Construction guarantees there are no missing values left, both classes are
// present and every numeric cell is finite.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string id, std::vector<ColumnSchema> columns, std::size_t n_rows,
          std::vector<double> numeric, std::vector<std::uint32_t> categorical,
          std::vector<std::vector<std::string>> category_values, std::vector<std::int8_t> labels);

  const std::string& id() const { return id_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_numeric() const { return d_num_; }
  std::size_t n_categorical() const { return d_cat_; }
  const std::vector<ColumnSchema>& columns() const { return columns_; }
  double minority_fraction() const { return minority_fraction_; }

  // Column-major blocks.
  std::span<const double> numeric_column(std::size_t j) const {
    return {numeric_.data() + j * n_rows_, n_rows_};
  }
  std::span<const std::uint32_t> categorical_column(std::size_t j) const {
    return {categorical_.data() + j * n_rows_, n_rows_};
  }
  double numeric_value(std::size_t row, std::size_t j) const { return numeric_[j * n_rows_ + row]; }
  std::uint32_t categorical_value(std::size_t row, std::size_t j) const {
    return categorical_[j * n_rows_ + row];
  }
  const std::vector<std::string>& category_values(std::size_t j) const {
    return category_values_[j];
  }
  std::span<const std::int8_t> labels() const { return labels_; }
  std::int8_t label(std::size_t row) const { return labels_[row]; }

  bool operator==(const Dataset&) const = default;

 private:
  std::string id_;
  std::vector<ColumnSchema> columns_;
  std::size_t n_rows_ = 0;
  std::size_t d_num_ = 0;
  std::size_t d_cat_ = 0;
  std::vector<double> numeric_;                           // column-major d_num x n
  std::vector<std::uint32_t> categorical_;                // column-major d_cat x n
  std::vector<std::vector<std::string>> category_values_; // per categorical column
  std::vector<std::int8_t> labels_;
  double minority_fraction_ = 0.0;
};

struct StandardizeSpec {
  std::string dataset_id;
  std::string label_column;
  std::string positive_value;
  std::vector<std::string> dropped_columns;
};

// Numeric iff every non-missing cell parses as a finite real.
std::vector<ColumnKind> infer_kinds(const RawTable& table);

// Applies the preprocessing contract: drops columns, imputes numeric
// missings with the column mean, gives categorical missings their own
// category, cleans strings, and maps labels to +1 / -1.
Dataset standardize(const RawTable& table, std::span<const ColumnKind> kinds,
                    const StandardizeSpec& spec);

// Columnar binary cache with a JSON sidecar schema.
void save_dataset(const Dataset& dataset, const std::filesystem::path& bin_path,
                  const std::filesystem::path& schema_path);
Dataset load_dataset(const std::filesystem::path& bin_path,
                     const std::filesystem::path& schema_path);

}  // namespace noisebench
