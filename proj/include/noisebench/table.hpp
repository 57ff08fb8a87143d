#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace noisebench {

enum class ColumnKind { Numeric, Categorical };

// Rectangular table of optional strings, the common output of all parsers.
// A disengaged cell is a missing value.
struct RawTable {
  std::vector<std::string> column_names;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::optional<std::string>> cells;  // row-major, n_rows * n_cols

  const std::optional<std::string>& cell(std::size_t row, std::size_t col) const {
    return cells[row * n_cols + col];
  }
  std::optional<std::string>& cell(std::size_t row, std::size_t col) {
    return cells[row * n_cols + col];
  }

  bool operator==(const RawTable&) const = default;
};

}  // namespace noisebench
