#include "noisebench/builtin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

namespace {

constexpr std::string_view kScheme = "builtin:";

enum class Scale {
  Raw,      // 4 decimals
  IntGrid,  // clamp(round(5.5 + 1.6 x), 1, 10)
  LogSkew,  // 10 * exp(0.8 x), 3 decimals
};

struct SyntheticSpec {
  std::string_view id;
  std::size_t n = 0;
  std::size_t n_pos = 0;            // positives are the minority class
  std::vector<double> shifts;       // per-feature class separation; 0 = noise feature
  double common_factor = 0.0;       // weight of a shared per-row noise factor
  Scale scale = Scale::Raw;
  std::vector<std::size_t> missing_columns;
  double missing_rate = 0.0;
  std::uint64_t seed = 0;
};

void append_fixed(std::string& out, double v, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  out.append(buf, res.ptr);
}

std::string generate(const SyntheticSpec& spec) {
  Rng rng(SeedMix(spec.seed).mix(spec.id).value());

  std::vector<std::int8_t> labels(spec.n, -1);
  std::fill(labels.begin(), labels.begin() + spec.n_pos, std::int8_t{1});
  rng.shuffle(labels);

  std::string csv;
  csv.reserve(spec.n * (spec.shifts.size() * 7 + 6));
  for (std::size_t j = 0; j < spec.shifts.size(); ++j) {
    csv += "f" + std::to_string(j) + ",";
  }
  csv += "class\n";

  for (std::size_t i = 0; i < spec.n; ++i) {
    const double s = labels[i];
    const double shared = rng.gaussian();
    for (std::size_t j = 0; j < spec.shifts.size(); ++j) {
      const double x = spec.shifts[j] * s + spec.common_factor * shared + rng.gaussian();
      const bool missing =
          spec.missing_rate > 0.0 &&
          std::find(spec.missing_columns.begin(), spec.missing_columns.end(), j) !=
              spec.missing_columns.end() &&
          rng.uniform() < spec.missing_rate;
      if (!missing) {
        switch (spec.scale) {
          case Scale::Raw:
            append_fixed(csv, x, 4);
            break;
          case Scale::IntGrid: {
            const double g = std::clamp(std::round(5.5 + 1.6 * x), 1.0, 10.0);
            csv += std::to_string(static_cast<int>(g));
            break;
          }
          case Scale::LogSkew:
            append_fixed(csv, 10.0 * std::exp(0.8 * x), 3);
            break;
        }
      }
      csv.push_back(',');
    }
    csv += labels[i] == 1 ? "yes" : "no";
    csv.push_back('\n');
  }
  return csv;
}

std::vector<double> with_noise_tail(std::vector<double> informative, std::size_t total) {
  informative.resize(total, 0.0);
  return informative;
}

SyntheticSpec spec_breastcancer() {
  SyntheticSpec spec;
  spec.id = "breastcancer";
  spec.n = 699;
  spec.n_pos = 240;
  spec.shifts = {1.15, 1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.2, 0.1};
  spec.common_factor = 0.4;
  spec.scale = Scale::IntGrid;
  spec.missing_columns = {7, 8};
  spec.missing_rate = 0.012;
  spec.seed = 0x9b5c01;
  return spec;
}

SyntheticSpec spec_spambase() {
  SyntheticSpec spec;
  spec.id = "spambase";
  spec.n = 4601;
  spec.n_pos = 1813;
  std::vector<double> informative;
  for (int j = 0; j < 18; ++j) informative.push_back(0.85 * std::pow(0.93, j));
  spec.shifts = with_noise_tail(std::move(informative), 57);
  spec.common_factor = 0.5;
  spec.scale = Scale::Raw;
  spec.seed = 0x59a3b2;
  return spec;
}

SyntheticSpec spec_kc2() {
  SyntheticSpec spec;
  spec.id = "kc2";
  spec.n = 522;
  spec.n_pos = 107;
  spec.shifts = with_noise_tail({0.7, 0.6, 0.55, 0.5, 0.45, 0.4}, 22);
  spec.common_factor = 0.5;
  spec.scale = Scale::LogSkew;
  spec.seed = 0x6c2a17;
  return spec;
}

SyntheticSpec spec_pc1() {
  SyntheticSpec spec;
  spec.id = "pc1";
  spec.n = 1109;
  spec.n_pos = 77;
  spec.shifts = with_noise_tail({0.65, 0.6, 0.5, 0.45, 0.4}, 22);
  spec.common_factor = 0.5;
  spec.scale = Scale::LogSkew;
  spec.seed = 0x3f91d4;
  return spec;
}

// Small mixed-type dataset used by tests and examples: two numeric and two
// categorical columns, sparse missing cells in both kinds.
std::string generate_toy_mixed() {
  const std::size_t n = 80;
  const std::size_t n_pos = 28;
  Rng rng(SeedMix(0x70f0).mix("toy_mixed").value());

  std::vector<std::int8_t> labels(n, -1);
  std::fill(labels.begin(), labels.begin() + n_pos, std::int8_t{1});
  rng.shuffle(labels);

  std::string csv = "x0,x1,color,texture,class\n";
  const char* colors_pos[] = {"red", "red", "red", "red", "red", "red", "red",
                              "green", "green", "blue"};
  const char* colors_neg[] = {"red", "red", "green", "green", "green", "green",
                              "blue", "blue", "blue", "blue"};
  const char* textures[] = {"smooth", "rough", "ridged", "ridged", "ridged"};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = labels[i];
    const double x0 = 1.2 * s + rng.gaussian();
    const double x1 = 0.8 * s + rng.gaussian();
    if (rng.uniform() < 0.05) {
      csv.push_back(',');
    } else {
      append_fixed(csv, x0, 4);
      csv.push_back(',');
    }
    append_fixed(csv, x1, 4);
    csv.push_back(',');
    const char* color = labels[i] == 1 ? colors_pos[rng.below(10)] : colors_neg[rng.below(10)];
    if (rng.uniform() < 0.05) {
      csv.push_back(',');
    } else {
      csv += color;
      csv.push_back(',');
    }
    csv += textures[rng.below(5)];
    csv.push_back(',');
    csv += labels[i] == 1 ? "yes" : "no";
    csv.push_back('\n');
  }
  return csv;
}

}  // namespace

bool is_builtin_url(std::string_view url) { return url.substr(0, kScheme.size()) == kScheme; }

std::string builtin_name(std::string_view url) {
  if (!is_builtin_url(url)) throw Error("not a builtin url: " + std::string(url));
  return std::string(url.substr(kScheme.size()));
}

std::vector<std::string> builtin_names() {
  return {"breastcancer", "spambase", "kc2", "pc1", "toy_mixed"};
}

std::string builtin_csv(std::string_view name) {
  if (name == "breastcancer") return generate(spec_breastcancer());
  if (name == "spambase") return generate(spec_spambase());
  if (name == "kc2") return generate(spec_kc2());
  if (name == "pc1") return generate(spec_pc1());
  if (name == "toy_mixed") return generate_toy_mixed();
  throw Error("unknown builtin dataset '" + std::string(name) + "'");
}

}  // namespace noisebench
