#include "noisebench/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "noisebench/text.hpp"

namespace noisebench {

namespace {

bool parse_finite_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

}  // namespace

Dataset::Dataset(std::string id, std::vector<ColumnSchema> columns, std::size_t n_rows,
                 std::vector<double> numeric, std::vector<std::uint32_t> categorical,
                 std::vector<std::vector<std::string>> category_values,
                 std::vector<std::int8_t> labels)
    : id_(std::move(id)),
      columns_(std::move(columns)),
      n_rows_(n_rows),
      numeric_(std::move(numeric)),
      categorical_(std::move(categorical)),
      category_values_(std::move(category_values)),
      labels_(std::move(labels)) {
  for (const auto& col : columns_) {
    if (col.kind == ColumnKind::Numeric) {
      ++d_num_;
    } else {
      ++d_cat_;
    }
  }
  if (labels_.size() != n_rows_ || numeric_.size() != d_num_ * n_rows_ ||
      categorical_.size() != d_cat_ * n_rows_ || category_values_.size() != d_cat_) {
    throw Error("dataset '" + id_ + "': inconsistent block sizes");
  }
  std::size_t pos = 0;
  for (const auto v : labels_) {
    if (v != 1 && v != -1) throw Error("dataset '" + id_ + "': label outside {-1,+1}");
    if (v == 1) ++pos;
  }
  const std::size_t neg = n_rows_ - pos;
  if (pos == 0 || neg == 0) throw SingleClassDataset(id_);
  for (const auto v : numeric_) {
    if (!std::isfinite(v)) throw Error("dataset '" + id_ + "': non-finite numeric value");
  }
  minority_fraction_ = static_cast<double>(std::min(pos, neg)) / static_cast<double>(n_rows_);
}

std::vector<ColumnKind> infer_kinds(const RawTable& table) {
  std::vector<ColumnKind> kinds(table.n_cols, ColumnKind::Categorical);
  for (std::size_t c = 0; c < table.n_cols; ++c) {
    bool numeric = false;
    for (std::size_t r = 0; r < table.n_rows; ++r) {
      const auto& cell = table.cell(r, c);
      if (!cell) continue;
      double v;
      if (!parse_finite_double(*cell, v)) {
        numeric = false;
        break;
      }
      numeric = true;
    }
    kinds[c] = numeric ? ColumnKind::Numeric : ColumnKind::Categorical;
  }
  return kinds;
}

Dataset standardize(const RawTable& table, std::span<const ColumnKind> kinds,
                    const StandardizeSpec& spec) {
  if (kinds.size() != table.n_cols) {
    throw Error("kind list does not match table arity");
  }
  const std::string label_name = clean_string(spec.label_column);
  const std::string positive = clean_string(spec.positive_value);

  std::vector<std::string> names(table.n_cols);
  for (std::size_t c = 0; c < table.n_cols; ++c) names[c] = clean_string(table.column_names[c]);

  std::size_t label_col = table.n_cols;
  for (std::size_t c = 0; c < table.n_cols; ++c) {
    if (names[c] == label_name) {
      label_col = c;
      break;
    }
  }
  if (label_col == table.n_cols) throw LabelColumnMissing(spec.label_column);

  std::vector<bool> keep(table.n_cols, true);
  keep[label_col] = false;
  for (const auto& dropped : spec.dropped_columns) {
    const std::string d = clean_string(dropped);
    for (std::size_t c = 0; c < table.n_cols; ++c) {
      if (names[c] == d) keep[c] = false;
    }
  }

  // Rows whose label cell is missing carry no supervision and are dropped.
  std::vector<std::size_t> rows;
  std::vector<std::int8_t> labels;
  rows.reserve(table.n_rows);
  for (std::size_t r = 0; r < table.n_rows; ++r) {
    const auto& cell = table.cell(r, label_col);
    if (!cell) continue;
    rows.push_back(r);
    labels.push_back(clean_string(*cell) == positive ? std::int8_t{1} : std::int8_t{-1});
  }
  const std::size_t n = rows.size();
  if (n == 0) throw EmptyInput();

  std::vector<ColumnSchema> columns;
  std::vector<double> numeric;
  std::vector<std::uint32_t> categorical;
  std::vector<std::vector<std::string>> category_values;
  std::size_t next_numeric = 0;

  for (std::size_t c = 0; c < table.n_cols; ++c) {
    if (!keep[c]) continue;
    ColumnSchema schema;
    schema.name = names[c];
    schema.kind = kinds[c];
    if (kinds[c] == ColumnKind::Numeric) {
      schema.missing_policy = ColumnSchema::MissingPolicy::MeanImpute;
      schema.storage_index = next_numeric++;
      double sum = 0.0;
      std::size_t observed = 0;
      std::vector<double> values(n);
      std::vector<bool> present(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& cell = table.cell(rows[i], c);
        if (!cell) continue;
        double v;
        if (!parse_finite_double(*cell, v)) {
          throw Error("column '" + schema.name + "': cell '" + *cell +
                      "' is not a finite number");
        }
        values[i] = v;
        present[i] = true;
        sum += v;
        ++observed;
      }
      if (observed == 0) throw AllMissingColumn(schema.name);
      const double mean = sum / static_cast<double>(observed);
      for (std::size_t i = 0; i < n; ++i) {
        numeric.push_back(present[i] ? values[i] : mean);
      }
    } else {
      schema.missing_policy = ColumnSchema::MissingPolicy::OwnCategory;
      schema.storage_index = category_values.size();
      std::unordered_map<std::string, std::uint32_t> codes;
      std::vector<std::string> value_list;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& cell = table.cell(rows[i], c);
        std::string value = cell ? clean_string(*cell) : std::string(kMissingCategory);
        if (value.empty()) value = kMissingCategory;
        auto it = codes.find(value);
        if (it == codes.end()) {
          it = codes.emplace(value, static_cast<std::uint32_t>(value_list.size())).first;
          value_list.push_back(value);
        }
        categorical.push_back(it->second);
      }
      category_values.push_back(std::move(value_list));
    }
    columns.push_back(std::move(schema));
  }

  return Dataset(spec.dataset_id, std::move(columns), n, std::move(numeric),
                 std::move(categorical), std::move(category_values), std::move(labels));
}

namespace {

constexpr std::uint32_t kMagic = 0x4e424453;  // "NBDS"
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_dataset(const Dataset& ds, const std::filesystem::path& bin_path,
                  const std::filesystem::path& schema_path) {
  std::ofstream out(bin_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + bin_path.string());
  write_pod(out, kMagic);
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint64_t>(ds.n_rows()));
  write_pod(out, static_cast<std::uint64_t>(ds.n_numeric()));
  write_pod(out, static_cast<std::uint64_t>(ds.n_categorical()));
  for (std::size_t j = 0; j < ds.n_numeric(); ++j) {
    const auto col = ds.numeric_column(j);
    out.write(reinterpret_cast<const char*>(col.data()),
              static_cast<std::streamsize>(col.size_bytes()));
  }
  for (std::size_t j = 0; j < ds.n_categorical(); ++j) {
    const auto col = ds.categorical_column(j);
    out.write(reinterpret_cast<const char*>(col.data()),
              static_cast<std::streamsize>(col.size_bytes()));
  }
  const auto labels = ds.labels();
  out.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size_bytes()));
  if (!out) throw Error("short write to " + bin_path.string());

  nlohmann::json schema;
  schema["id"] = ds.id();
  schema["n_rows"] = ds.n_rows();
  schema["minority_fraction"] = ds.minority_fraction();
  auto& cols = schema["columns"] = nlohmann::json::array();
  for (const auto& col : ds.columns()) {
    cols.push_back({{"name", col.name},
                    {"kind", col.kind == ColumnKind::Numeric ? "numeric" : "categorical"},
                    {"missing_policy", col.kind == ColumnKind::Numeric ? "mean_impute"
                                                                       : "own_category"}});
  }
  auto& cats = schema["categories"] = nlohmann::json::array();
  for (std::size_t j = 0; j < ds.n_categorical(); ++j) cats.push_back(ds.category_values(j));

  std::ofstream sout(schema_path, std::ios::trunc);
  if (!sout) throw Error("cannot write " + schema_path.string());
  sout << schema.dump(2) << '\n';
}

Dataset load_dataset(const std::filesystem::path& bin_path,
                     const std::filesystem::path& schema_path) {
  std::ifstream sin(schema_path);
  if (!sin) throw Error("cannot read " + schema_path.string());
  nlohmann::json schema = nlohmann::json::parse(sin);

  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw Error("cannot read " + bin_path.string());
  std::uint32_t magic = 0, version = 0;
  std::uint64_t n = 0, d_num = 0, d_cat = 0;
  read_pod(in, magic);
  read_pod(in, version);
  if (magic != kMagic || version != kVersion) {
    throw Error(bin_path.string() + " is not a dataset cache file");
  }
  read_pod(in, n);
  read_pod(in, d_num);
  read_pod(in, d_cat);

  std::vector<double> numeric(d_num * n);
  std::vector<std::uint32_t> categorical(d_cat * n);
  std::vector<std::int8_t> labels(n);
  in.read(reinterpret_cast<char*>(numeric.data()),
          static_cast<std::streamsize>(numeric.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(categorical.data()),
          static_cast<std::streamsize>(categorical.size() * sizeof(std::uint32_t)));
  in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
  if (!in) throw Error("truncated dataset cache " + bin_path.string());

  std::vector<ColumnSchema> columns;
  std::size_t num_idx = 0, cat_idx = 0;
  for (const auto& col : schema.at("columns")) {
    ColumnSchema c;
    c.name = col.at("name").get<std::string>();
    if (col.at("kind").get<std::string>() == "numeric") {
      c.kind = ColumnKind::Numeric;
      c.missing_policy = ColumnSchema::MissingPolicy::MeanImpute;
      c.storage_index = num_idx++;
    } else {
      c.kind = ColumnKind::Categorical;
      c.missing_policy = ColumnSchema::MissingPolicy::OwnCategory;
      c.storage_index = cat_idx++;
    }
    columns.push_back(std::move(c));
  }
  std::vector<std::vector<std::string>> category_values;
  for (const auto& values : schema.at("categories")) {
    category_values.push_back(values.get<std::vector<std::string>>());
  }

  Dataset ds(schema.at("id").get<std::string>(), std::move(columns), n, std::move(numeric),
             std::move(categorical), std::move(category_values), std::move(labels));
  // The constructor recomputed minority_fraction; cross-check the sidecar.
  const double recorded = schema.at("minority_fraction").get<double>();
  if (std::abs(recorded - ds.minority_fraction()) > 1e-12) {
    throw Error("dataset '" + ds.id() + "': minority_fraction does not match recount");
  }
  return ds;
}

}  // namespace noisebench
