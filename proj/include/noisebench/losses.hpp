#pragma once

#include <span>
#include <string>
#include <string_view>

#include "noisebench/errors.hpp"

namespace noisebench {

class KinkTooClose : public Error {
 public:
  KinkTooClose(double f, double kink)
      : Error("margin " + std::to_string(f) + " too close to kink at " + std::to_string(kink)) {}
};

// Margin losses used as boosting objectives. y is +1 or -1, f the raw
// margin. Subgradient at kinks is 0 (the flat side wins).
//
//   hinge     max(0, 1 - yf)
//   squerr    (f - y)^2
//   unhinged  1 - yf
//   ramp      max(0, min(1, (1 - yf) / 2))
class LossFn {
 public:
  enum class Kind { Hinge, SquaredError, Unhinged, Ramp };

  static const LossFn& hinge();
  static const LossFn& squared_error();
  static const LossFn& unhinged();
  static const LossFn& ramp();
  // Accepts "hinge", "squerr", "unhinged", "ramp".
  static const LossFn& by_name(std::string_view name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool claimed_symmetric() const { return claimed_symmetric_; }
  // True when hess() is identically zero; such losses need lambda > 0.
  bool zero_hessian() const { return zero_hessian_; }

  double value(double f, int y) const;
  double grad(double f, int y) const;
  double hess(double f, int y) const;

 private:
  LossFn(Kind kind, std::string name, bool symmetric, bool zero_hessian)
      : kind_(kind), name_(std::move(name)), claimed_symmetric_(symmetric),
        zero_hessian_(zero_hessian) {}

  Kind kind_;
  std::string name_;
  bool claimed_symmetric_;
  bool zero_hessian_;
};

struct SymmetryReport {
  bool symmetric = false;
  double constant = 0.0;      // c such that L(f,+1) + L(f,-1) = c, when symmetric
  double spread = 0.0;        // max |s(f) - c| over the sampled margins
  double worst_margin = 0.0;  // margin attaining the spread
};

// Evaluates s(f) = L(f,+1) + L(f,-1) over the sample margins and reports
// whether it is constant within tol.
SymmetryReport check_symmetry(const LossFn& loss, std::span<const double> margins, double tol);

// Max relative error between the analytic gradient and a central finite
// difference with step h. Throws KinkTooClose if f is within h of a kink.
double grad_check(const LossFn& loss, double f, int y, double h);

}  // namespace noisebench
