#include "noisebench/snb.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "noisebench/rng.hpp"

namespace noisebench {

namespace {

struct BinCounts {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t total() const { return pos + neg; }
};

// sum_c n_bc log(n_bc / n_b); the bin's contribution to the conditional
// log-likelihood of the labels.
double bin_loglik(const BinCounts& b) {
  const double n = static_cast<double>(b.total());
  double ll = 0.0;
  if (b.pos > 0) ll += static_cast<double>(b.pos) * std::log(static_cast<double>(b.pos) / n);
  if (b.neg > 0) ll += static_cast<double>(b.neg) * std::log(static_cast<double>(b.neg) / n);
  return ll;
}

double log_add_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

std::size_t bin_of(std::span<const double> cuts, double value) {
  // First cut >= value; values above every cut land in the last bin.
  return static_cast<std::size_t>(
      std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

std::vector<double> discretize_numeric(std::span<const double> values,
                                       std::span<const std::int8_t> labels, int max_bins) {
  if (values.empty()) throw Error("discretize_numeric needs at least one value");
  if (max_bins < 1) throw Error("discretize_numeric needs max_bins >= 1");
  const std::size_t n = values.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Distinct values with per-class counts, ascending.
  std::vector<double> distinct;
  std::vector<BinCounts> counts;
  for (const auto i : order) {
    if (distinct.empty() || values[i] > distinct.back()) {
      distinct.push_back(values[i]);
      counts.emplace_back();
    }
    if (labels[i] == 1) {
      ++counts.back().pos;
    } else {
      ++counts.back().neg;
    }
  }

  // Equal-frequency seeding: a boundary after the smallest distinct value
  // whose cumulative count reaches each quantile target.
  std::vector<std::size_t> boundaries;  // index of last distinct value in each bin
  std::size_t cum = 0;
  std::size_t next_target = 1;
  for (std::size_t d = 0; d + 1 < distinct.size(); ++d) {
    cum += counts[d].total();
    const double target =
        static_cast<double>(n) * static_cast<double>(next_target) / static_cast<double>(max_bins);
    if (static_cast<double>(cum) >= target && boundaries.size() + 1 < static_cast<std::size_t>(max_bins)) {
      boundaries.push_back(d);
      ++next_target;
    }
  }
  boundaries.push_back(distinct.size() - 1);

  std::vector<BinCounts> bins(boundaries.size());
  std::size_t d = 0;
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    for (; d <= boundaries[b]; ++d) {
      bins[b].pos += counts[d].pos;
      bins[b].neg += counts[d].neg;
    }
  }

  // Greedy merging while BIC improves. Merging removes one bin, lowering
  // the penalty by 0.5 log n; it is accepted when the likelihood loss is
  // smaller than that.
  const double merge_bonus = 0.5 * std::log(static_cast<double>(n));
  while (bins.size() > 1) {
    double best_delta = 0.0;
    std::size_t best_pair = bins.size();
    for (std::size_t b = 0; b + 1 < bins.size(); ++b) {
      BinCounts merged{bins[b].pos + bins[b + 1].pos, bins[b].neg + bins[b + 1].neg};
      const double delta_ll = bin_loglik(merged) - bin_loglik(bins[b]) - bin_loglik(bins[b + 1]);
      const double delta_bic = delta_ll + merge_bonus;
      if (delta_bic > best_delta + 1e-12) {
        best_delta = delta_bic;
        best_pair = b;
      }
    }
    if (best_pair == bins.size()) break;
    bins[best_pair].pos += bins[best_pair + 1].pos;
    bins[best_pair].neg += bins[best_pair + 1].neg;
    bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(best_pair + 1));
    boundaries.erase(boundaries.begin() + static_cast<std::ptrdiff_t>(best_pair));
  }

  // Cuts at midpoints between the last value of one bin and the first of
  // the next.
  std::vector<double> cuts;
  for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
    const double lo = distinct[boundaries[b]];
    const double hi = distinct[boundaries[b] + 1];
    double cut = 0.5 * (lo + hi);
    if (!(cut >= lo && cut < hi)) cut = lo;
    cuts.push_back(cut);
  }
  return cuts;
}

CategoryGrouping group_categorical(std::span<const std::uint32_t> codes, std::size_t n_codes,
                                   std::span<const std::int8_t> labels, int min_support) {
  (void)labels;  // the pooling rule is support-based only
  CategoryGrouping grouping;
  std::vector<std::size_t> support(n_codes, 0);
  for (const auto code : codes) ++support[code];

  grouping.group_of_code.assign(n_codes, 0);
  std::uint32_t next = 0;
  for (std::size_t code = 0; code < n_codes; ++code) {
    if (support[code] >= static_cast<std::size_t>(min_support)) {
      grouping.group_of_code[code] = next++;
    }
  }
  grouping.other_group = next;
  for (std::size_t code = 0; code < n_codes; ++code) {
    if (support[code] < static_cast<std::size_t>(min_support)) {
      grouping.group_of_code[code] = grouping.other_group;
    }
  }
  grouping.n_groups = next + 1;
  return grouping;
}

std::size_t SnbFeature::part(const Dataset& dataset, std::size_t row) const {
  const auto& col = dataset.columns()[column];
  if (numeric) return bin_of(cuts, dataset.numeric_value(row, col.storage_index));
  return grouping.group(dataset.categorical_value(row, col.storage_index));
}

double SnbModel::score(const Dataset& dataset, std::size_t row) const {
  double s = log_prior_pos - log_prior_neg;
  for (const auto& f : features) {
    if (f.weight <= 0.0) continue;
    const std::size_t part = f.part(dataset, row);
    s += f.weight * (f.logp_pos[part] - f.logp_neg[part]);
  }
  return s;
}

SnbModel fit_snb(const SnbConfig& config, const Dataset& dataset,
                 std::span<const std::size_t> train_rows,
                 std::span<const std::int8_t> train_labels, std::uint64_t seed) {
  const std::size_t n = train_rows.size();
  if (n == 0) throw Error("fit_snb needs at least one row");

  std::size_t n_pos = 0;
  for (const auto y : train_labels) {
    if (y == 1) ++n_pos;
  }
  const std::size_t n_neg = n - n_pos;

  SnbModel model;
  model.log_prior_pos = std::log(static_cast<double>(n_pos) / static_cast<double>(n));
  model.log_prior_neg = std::log(static_cast<double>(n_neg) / static_cast<double>(n));

  // Partitions and smoothed conditionals per feature.
  const auto& columns = dataset.columns();
  std::vector<std::vector<std::uint32_t>> part_of(columns.size());  // per feature, per train row
  for (std::size_t c = 0; c < columns.size(); ++c) {
    SnbFeature feature;
    feature.column = c;
    if (columns[c].kind == ColumnKind::Numeric) {
      feature.numeric = true;
      std::vector<double> values(n);
      const auto col = dataset.numeric_column(columns[c].storage_index);
      for (std::size_t i = 0; i < n; ++i) values[i] = col[train_rows[i]];
      feature.cuts = discretize_numeric(values, train_labels, config.max_bins);
      feature.n_parts = feature.cuts.size() + 1;
    } else {
      feature.numeric = false;
      std::vector<std::uint32_t> codes(n);
      const auto col = dataset.categorical_column(columns[c].storage_index);
      for (std::size_t i = 0; i < n; ++i) codes[i] = col[train_rows[i]];
      feature.grouping = group_categorical(
          codes, dataset.category_values(columns[c].storage_index).size(), train_labels,
          config.min_support);
      feature.n_parts = feature.grouping.n_groups;
    }

    auto& parts = part_of[c];
    parts.resize(n);
    std::vector<std::size_t> count_pos(feature.n_parts, 0), count_neg(feature.n_parts, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t part = feature.part(dataset, train_rows[i]);
      parts[i] = static_cast<std::uint32_t>(part);
      if (train_labels[i] == 1) {
        ++count_pos[part];
      } else {
        ++count_neg[part];
      }
    }
    feature.logp_pos.resize(feature.n_parts);
    feature.logp_neg.resize(feature.n_parts);
    for (std::size_t p = 0; p < feature.n_parts; ++p) {
      feature.logp_pos[p] = std::log(static_cast<double>(count_pos[p] + 1) /
                                     static_cast<double>(n_pos + feature.n_parts));
      feature.logp_neg[p] = std::log(static_cast<double>(count_neg[p] + 1) /
                                     static_cast<double>(n_neg + feature.n_parts));
    }
    model.features.push_back(std::move(feature));
  }

  // Randomized greedy forward selection, BIC-penalized; W is the selection
  // frequency across passes.
  const double penalty = 0.5 * std::log(static_cast<double>(n));
  std::vector<int> selected_count(columns.size(), 0);
  std::vector<double> lp(n), ln(n), cand_lp(n), cand_ln(n);

  for (int pass = 0; pass < config.selection_passes; ++pass) {
    std::vector<std::size_t> order(columns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(SeedMix(seed).mix("snb_pass").mix(static_cast<std::uint64_t>(pass)).value());
    rng.shuffle(order);

    std::fill(lp.begin(), lp.end(), model.log_prior_pos);
    std::fill(ln.begin(), ln.end(), model.log_prior_neg);
    double current = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double norm = log_add_exp(lp[i], ln[i]);
      current += (train_labels[i] == 1 ? lp[i] : ln[i]) - norm;
    }

    std::vector<char> in_model(columns.size(), 0);
    while (true) {
      // Adding a feature must buy more likelihood than the BIC penalty for
      // one extra selected feature.
      double best_ll = current + penalty;
      std::size_t best_feature = columns.size();
      for (const auto f : order) {
        if (in_model[f]) continue;
        const auto& feature = model.features[f];
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const std::uint32_t part = part_of[f][i];
          const double a = lp[i] + feature.logp_pos[part];
          const double b = ln[i] + feature.logp_neg[part];
          ll += (train_labels[i] == 1 ? a : b) - log_add_exp(a, b);
        }
        if (ll > best_ll + 1e-9) {
          best_ll = ll;
          best_feature = f;
        }
      }
      if (best_feature == columns.size()) break;
      assert(best_ll - penalty > current);  // greedy passes are strictly monotone
      const auto& feature = model.features[best_feature];
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t part = part_of[best_feature][i];
        lp[i] += feature.logp_pos[part];
        ln[i] += feature.logp_neg[part];
      }
      current = best_ll;
      in_model[best_feature] = 1;
      ++selected_count[best_feature];
    }
  }

  for (std::size_t c = 0; c < columns.size(); ++c) {
    model.features[c].weight =
        static_cast<double>(selected_count[c]) / static_cast<double>(config.selection_passes);
  }
  return model;
}

namespace {

class SnbTrainedModel final : public TrainedModel {
 public:
  explicit SnbTrainedModel(SnbModel model) : model_(std::move(model)) {}
  double score(const Dataset& dataset, std::size_t row) const override {
    return model_.score(dataset, row);
  }
  std::string_view family() const override { return "snb"; }

 private:
  SnbModel model_;
};

}  // namespace

std::unique_ptr<TrainedModel> fit_snb_model(const SnbConfig& config, const Dataset& dataset,
                                            std::span<const std::size_t> train_rows,
                                            std::span<const std::int8_t> train_labels,
                                            std::uint64_t seed) {
  return std::make_unique<SnbTrainedModel>(
      fit_snb(config, dataset, train_rows, train_labels, seed));
}

}  // namespace noisebench
