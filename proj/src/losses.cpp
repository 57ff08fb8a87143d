#include "noisebench/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noisebench {

const LossFn& LossFn::hinge() {
  static const LossFn fn(Kind::Hinge, "hinge", false, true);
  return fn;
}
const LossFn& LossFn::squared_error() {
  static const LossFn fn(Kind::SquaredError, "squerr", false, false);
  return fn;
}
const LossFn& LossFn::unhinged() {
  static const LossFn fn(Kind::Unhinged, "unhinged", true, true);
  return fn;
}
const LossFn& LossFn::ramp() {
  static const LossFn fn(Kind::Ramp, "ramp", true, true);
  return fn;
}

const LossFn& LossFn::by_name(std::string_view name) {
  if (name == "hinge") return hinge();
  if (name == "squerr") return squared_error();
  if (name == "unhinged") return unhinged();
  if (name == "ramp") return ramp();
  throw Error("unknown loss '" + std::string(name) + "'");
}

double LossFn::value(double f, int y) const {
  const double u = y * f;
  switch (kind_) {
    case Kind::Hinge:
      return std::max(0.0, 1.0 - u);
    case Kind::SquaredError:
      return (f - y) * (f - y);
    case Kind::Unhinged:
      return 1.0 - u;
    case Kind::Ramp:
      return std::clamp((1.0 - u) / 2.0, 0.0, 1.0);
  }
  return 0.0;
}

double LossFn::grad(double f, int y) const {
  const double u = y * f;
  switch (kind_) {
    case Kind::Hinge:
      return u < 1.0 ? -static_cast<double>(y) : 0.0;
    case Kind::SquaredError:
      return 2.0 * (f - y);
    case Kind::Unhinged:
      return -static_cast<double>(y);
    case Kind::Ramp:
      return (u > -1.0 && u < 1.0) ? -0.5 * y : 0.0;
  }
  return 0.0;
}

double LossFn::hess(double f, int y) const {
  (void)f;
  (void)y;
  return kind_ == Kind::SquaredError ? 2.0 : 0.0;
}

SymmetryReport check_symmetry(const LossFn& loss, std::span<const double> margins, double tol) {
  if (margins.size() < 2) throw Error("check_symmetry needs at least 2 margins");
  if (!(tol > 0.0)) throw Error("check_symmetry needs tol > 0");
  SymmetryReport report;
  report.constant = loss.value(margins[0], +1) + loss.value(margins[0], -1);
  for (const double f : margins) {
    const double s = loss.value(f, +1) + loss.value(f, -1);
    const double dev = std::abs(s - report.constant);
    if (dev > report.spread) {
      report.spread = dev;
      report.worst_margin = f;
    }
  }
  report.symmetric = report.spread <= tol;
  return report;
}

namespace {

// Distance from f to the closest non-smooth point of the loss, or +inf.
double kink_distance(const LossFn& loss, double f, int y) {
  switch (loss.kind()) {
    case LossFn::Kind::Hinge:
      return std::abs(y * f - 1.0);
    case LossFn::Kind::Ramp:
      return std::min(std::abs(y * f - 1.0), std::abs(y * f + 1.0));
    default:
      return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double grad_check(const LossFn& loss, double f, int y, double h) {
  if (kink_distance(loss, f, y) <= h) {
    throw KinkTooClose(f, f + kink_distance(loss, f, y));
  }
  const double fd = (loss.value(f + h, y) - loss.value(f - h, y)) / (2.0 * h);
  const double g = loss.grad(f, y);
  return std::abs(g - fd) / std::max(1.0, std::abs(fd));
}

}  // namespace noisebench
