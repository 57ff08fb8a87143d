#include "noisebench/encode.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace noisebench {

OneHotEncoder OneHotEncoder::fit(const Dataset& dataset, std::span<const std::size_t> rows) {
  OneHotEncoder enc;
  for (const auto& col : dataset.columns()) {
    if (col.kind == ColumnKind::Numeric) {
      const auto values = dataset.numeric_column(col.storage_index);
      double sum = 0.0;
      for (const auto r : rows) sum += values[r];
      const double mean = sum / static_cast<double>(rows.size());
      double var = 0.0;
      for (const auto r : rows) {
        const double d = values[r] - mean;
        var += d * d;
      }
      var /= static_cast<double>(rows.size());  // population variance
      if (var <= 0.0) continue;                 // constant feature: dropped
      enc.numeric_.push_back({col.storage_index, mean, std::sqrt(var)});
    } else {
      const auto codes = dataset.categorical_column(col.storage_index);
      std::set<std::uint32_t> seen;
      for (const auto r : rows) seen.insert(codes[r]);
      CategoricalFeature feature;
      feature.column = col.storage_index;
      feature.categories.assign(seen.begin(), seen.end());
      enc.categorical_.push_back(std::move(feature));
    }
  }
  enc.n_features_ = enc.numeric_.size();
  for (const auto& f : enc.categorical_) enc.n_features_ += f.categories.size();
  return enc;
}

void OneHotEncoder::encode_row(const Dataset& dataset, std::size_t row, double* out) const {
  std::size_t k = 0;
  for (const auto& f : numeric_) {
    out[k++] = (dataset.numeric_value(row, f.column) - f.mean) / f.std;
  }
  for (const auto& f : categorical_) {
    const std::uint32_t code = dataset.categorical_value(row, f.column);
    for (const auto cat : f.categories) {
      out[k++] = code == cat ? 1.0 : 0.0;
    }
  }
}

EncodedMatrix OneHotEncoder::transform(const Dataset& dataset,
                                       std::span<const std::size_t> rows) const {
  EncodedMatrix m;
  m.rows = rows.size();
  m.cols = n_features_;
  m.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    encode_row(dataset, rows[i], m.values.data() + i * m.cols);
  }
  return m;
}

std::pair<EncodedMatrix, EncodedMatrix> encode_onehot_standardized(
    const Dataset& dataset, std::span<const std::size_t> train_rows,
    std::span<const std::size_t> test_rows) {
  const OneHotEncoder enc = OneHotEncoder::fit(dataset, train_rows);
  return {enc.transform(dataset, train_rows), enc.transform(dataset, test_rows)};
}

}  // namespace noisebench
