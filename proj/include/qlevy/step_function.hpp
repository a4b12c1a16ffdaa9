#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlevy/types.hpp"

namespace qlevy {

/// Breakpoints closer than this are treated as one.
inline constexpr double kBreakpointSnap = 1e-12;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

/// Right-continuous piecewise-constant k-valued function on [0, inf):
/// values[0] on [0, t_1), values[i] on [t_i, t_{i+1}), values[n] on [t_n, inf).
class StepFunction {
 public:
  StepFunction() = default;
  /// Throws Error{shape} unless breakpoints are nonnegative, strictly
  /// increasing and there is one more value than breakpoints, all of equal dim.
  StepFunction(std::vector<double> breakpoints, std::vector<Vector> values,
               std::vector<std::optional<Rational>> exact = {});

  static StepFunction constant(const Vector& v);
  static StepFunction zero(int dim) { return constant(Vector::Zero(dim)); }

  int dim() const { return values_.empty() ? 0 : static_cast<int>(values_.front().size()); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Vector>& values() const { return values_; }
  const std::vector<std::optional<Rational>>& exact() const { return exact_; }

  const Vector& value_at(double t) const;
  /// The function s -> f(s + shift), shift >= 0.
  StepFunction shifted(double shift) const;
  /// Mean of f over [a, b).
  Vector average(double a, double b) const;
  double last_breakpoint() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<Vector> values_;
  std::vector<std::optional<Rational>> exact_;
};

/// Union of the breakpoints of f and g lying strictly inside (lo, hi), sorted,
/// with coincident points merged (exactly for rational pairs, else within
/// kBreakpointSnap).
std::vector<double> merged_breakpoints(const StepFunction& f, const StepFunction& g, double lo, double hi);

/// Integral of <f(s), g(s)> over [a, b), conjugate-linear in f.
cplx inner_product(const StepFunction& f, const StepFunction& g, double a, double b);

}  // namespace qlevy
