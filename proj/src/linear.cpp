#include "noisebench/linear.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace noisebench {

namespace {

// log(1 + exp(-m)) without overflow.
double logistic_loss(double m) {
  if (m > 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

// d/dm log(1+exp(-m)) = -1 / (1 + exp(m))
double logistic_grad(double m) { return -1.0 / (1.0 + std::exp(m)); }

double sqhinge_loss(double m) {
  const double t = std::max(0.0, 1.0 - m);
  return t * t;
}

double sqhinge_grad(double m) { return -2.0 * std::max(0.0, 1.0 - m); }

struct Objective {
  const EncodedMatrix& x;
  std::span<const std::int8_t> y;
  const LinearConfig& config;

  std::size_t dim() const { return x.cols + 1; }  // intercept last

  // Value and gradient at parameters theta = [w, b].
  double eval(std::span<const double> theta, std::vector<double>& grad) const {
    const std::size_t p = x.cols;
    const double b = config.fit_intercept ? theta[p] : 0.0;
    double value = 0.0;
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
      const auto row = x.row(i);
      double m = b;
      for (std::size_t j = 0; j < p; ++j) m += theta[j] * row[j];
      m *= y[i];
      double l, dl;
      if (config.variant == LinearConfig::Variant::LogisticRegression) {
        l = logistic_loss(m);
        dl = logistic_grad(m);
      } else {
        l = sqhinge_loss(m);
        dl = sqhinge_grad(m);
      }
      value += l;
      const double scale = config.c * dl * y[i];
      for (std::size_t j = 0; j < p; ++j) grad[j] += scale * row[j];
      if (config.fit_intercept) grad[p] += scale;
    }
    value *= config.c;
    // L2 on the weights only.
    for (std::size_t j = 0; j < p; ++j) {
      value += 0.5 * theta[j] * theta[j];
      grad[j] += theta[j];
    }
    if (!std::isfinite(value)) throw NonFiniteObjective();
    return value;
  }
};

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LinearModel fit_linear(const LinearConfig& config, const EncodedMatrix& features,
                       std::span<const std::int8_t> labels) {
  if (!(config.c > 0.0)) throw Error("LinearConfig: C must be positive");
  if (config.max_iter < 1) throw Error("LinearConfig: max_iter must be >= 1");
  for (const double v : features.values) {
    if (!std::isfinite(v)) throw NonFiniteFeature();
  }

  const Objective objective{features, labels, config};
  const std::size_t dim = objective.dim();
  std::vector<double> theta(dim, 0.0), grad(dim), new_theta(dim), new_grad(dim);
  double value = objective.eval(theta, grad);

  constexpr std::size_t kHistory = 10;
  constexpr double kArmijoC = 1e-4;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  LinearModel model;
  model.weights.assign(features.cols, 0.0);

  int iter = 0;
  for (; iter < config.max_iter; ++iter) {
    if (inf_norm(grad) <= config.tol) {
      model.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    std::vector<double> direction = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t h = s_hist.size(); h-- > 0;) {
      alpha[h] = rho_hist[h] * dot(s_hist[h], direction);
      for (std::size_t j = 0; j < dim; ++j) direction[j] -= alpha[h] * y_hist[h][j];
    }
    if (!s_hist.empty()) {
      const auto& s = s_hist.back();
      const auto& yv = y_hist.back();
      const double gamma = dot(s, yv) / dot(yv, yv);
      for (auto& d : direction) d *= gamma;
    }
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      const double beta = rho_hist[h] * dot(y_hist[h], direction);
      for (std::size_t j = 0; j < dim; ++j) direction[j] += (alpha[h] - beta) * s_hist[h][j];
    }
    for (auto& d : direction) d = -d;

    double descent = dot(grad, direction);
    if (descent >= 0.0) {  // not a descent direction: reset to steepest descent
      for (std::size_t j = 0; j < dim; ++j) direction[j] = -grad[j];
      descent = dot(grad, direction);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    // Backtracking line search (Armijo).
    double step = 1.0;
    double new_value = value;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < dim; ++j) new_theta[j] = theta[j] + step * direction[j];
      new_value = objective.eval(new_theta, new_grad);
      if (new_value <= value + kArmijoC * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step collapsed; gradient may be at numeric noise level

    std::vector<double> s(dim), yv(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s[j] = new_theta[j] - theta[j];
      yv[j] = new_grad[j] - grad[j];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kHistory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    theta.swap(new_theta);
    grad.swap(new_grad);
    value = new_value;
  }
  if (!model.converged) model.converged = inf_norm(grad) <= config.tol;

  model.iterations = iter;
  std::copy(theta.begin(), theta.begin() + features.cols, model.weights.begin());
  model.intercept = config.fit_intercept ? theta[features.cols] : 0.0;
  return model;
}

double score_linear(const LinearModel& model, std::span<const double> row) {
  double s = model.intercept;
  for (std::size_t j = 0; j < model.weights.size(); ++j) s += model.weights[j] * row[j];
  return s;
}

namespace {

class LinearTrainedModel final : public TrainedModel {
 public:
  LinearTrainedModel(OneHotEncoder encoder, LinearModel model, LinearConfig::Variant variant)
      : encoder_(std::move(encoder)), model_(std::move(model)), variant_(variant) {}

  double score(const Dataset& dataset, std::size_t row) const override {
    std::vector<double> encoded(encoder_.n_features());
    encoder_.encode_row(dataset, row, encoded.data());
    return score_linear(model_, encoded);
  }
  std::string_view family() const override {
    return variant_ == LinearConfig::Variant::LogisticRegression ? "logreg" : "linearsvc";
  }
  bool converged() const override { return model_.converged; }

 private:
  OneHotEncoder encoder_;
  LinearModel model_;
  LinearConfig::Variant variant_;
};

}  // namespace

std::unique_ptr<TrainedModel> fit_linear_model(const LinearConfig& config, const Dataset& dataset,
                                               std::span<const std::size_t> train_rows,
                                               std::span<const std::int8_t> train_labels) {
  OneHotEncoder encoder = OneHotEncoder::fit(dataset, train_rows);
  const EncodedMatrix features = encoder.transform(dataset, train_rows);
  LinearModel model = fit_linear(config, features, train_labels);
  return std::make_unique<LinearTrainedModel>(std::move(encoder), std::move(model),
                                              config.variant);
}

}  // namespace noisebench
