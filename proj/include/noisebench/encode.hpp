#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "noisebench/dataset.hpp"

namespace noisebench {

// Dense row-major real matrix.
struct EncodedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

// One-hot + z-score encoder fitted on a training split only. Numeric
// columns are standardized with training mean/std (zero-variance features
// are dropped); categorical columns are one-hot over training categories
// and unseen test categories encode as an all-zeros block.
class OneHotEncoder {
 public:
  OneHotEncoder() = default;

  static OneHotEncoder fit(const Dataset& dataset, std::span<const std::size_t> rows);

  EncodedMatrix transform(const Dataset& dataset, std::span<const std::size_t> rows) const;
  void encode_row(const Dataset& dataset, std::size_t row, double* out) const;

  std::size_t n_features() const { return n_features_; }

 private:
  struct NumericFeature {
    std::size_t column = 0;  // numeric storage index
    double mean = 0.0;
    double std = 1.0;
  };
  struct CategoricalFeature {
    std::size_t column = 0;                // categorical storage index
    std::vector<std::uint32_t> categories; // training codes, ascending; one feature each
  };

  std::vector<NumericFeature> numeric_;
  std::vector<CategoricalFeature> categorical_;
  std::size_t n_features_ = 0;
};

// Convenience wrapper fitting on the train rows and transforming both sets.
std::pair<EncodedMatrix, EncodedMatrix> encode_onehot_standardized(
    const Dataset& dataset, std::span<const std::size_t> train_rows,
    std::span<const std::size_t> test_rows);

}  // namespace noisebench
