#include "qlevy/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qlevy {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<Vector> values,
                           std::vector<std::optional<Rational>> exact)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), exact_(std::move(exact)) {
  if (values_.size() != breakpoints_.size() + 1)
    throw Error(ErrorCode::shape, "step function needs one more value than breakpoints");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || breakpoints_[i] < 0.0)
      throw Error(ErrorCode::shape, "step function breakpoints must be finite and nonnegative");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
      throw Error(ErrorCode::shape, "step function breakpoints must be strictly increasing");
  }
  for (const auto& v : values_)
    if (v.size() != values_.front().size()) throw Error(ErrorCode::shape, "step function values differ in dimension");
  if (exact_.empty()) exact_.resize(breakpoints_.size());
  if (exact_.size() != breakpoints_.size()) throw Error(ErrorCode::shape, "exact breakpoint list has wrong length");
}

StepFunction StepFunction::constant(const Vector& v) { return StepFunction({}, {v}); }

const Vector& StepFunction::value_at(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t + kBreakpointSnap);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

StepFunction StepFunction::shifted(double shift) const {
  std::vector<double> bps;
  std::vector<Vector> vals{value_at(shift)};
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] - shift > kBreakpointSnap) {
      bps.push_back(breakpoints_[i] - shift);
      vals.push_back(values_[i + 1]);
    }
  }
  return StepFunction(std::move(bps), std::move(vals));
}

Vector StepFunction::average(double a, double b) const {
  if (!(b > a)) return value_at(a);
  Vector acc = Vector::Zero(dim());
  double left = a;
  for (double bp : breakpoints_) {
    if (bp <= left) continue;
    if (bp >= b) break;
    acc += (bp - left) * value_at(left);
    left = bp;
  }
  acc += (b - left) * value_at(left);
  return acc / (b - a);
}

std::vector<double> merged_breakpoints(const StepFunction& f, const StepFunction& g, double lo, double hi) {
  std::vector<std::pair<double, std::optional<Rational>>> all;
  for (const StepFunction* s : {&f, &g})
    for (std::size_t i = 0; i < s->breakpoints().size(); ++i) {
      const double b = s->breakpoints()[i];
      if (b > lo + kBreakpointSnap && b < hi - kBreakpointSnap) all.emplace_back(b, s->exact()[i]);
    }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<double> out;
  std::optional<Rational> last_exact;
  for (const auto& [b, ex] : all) {
    if (!out.empty()) {
      const bool same = (ex && last_exact) ? (*ex == *last_exact) : (b - out.back() <= kBreakpointSnap);
      if (same) continue;
    }
    out.push_back(b);
    last_exact = ex;
  }
  return out;
}

cplx inner_product(const StepFunction& f, const StepFunction& g, double a, double b) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : merged_breakpoints(f, g, a, b)) cuts.push_back(x);
  cuts.push_back(b);
  cplx acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += (cuts[i + 1] - cuts[i]) * f.value_at(cuts[i]).dot(g.value_at(cuts[i]));
  return acc;
}

}  // namespace qlevy
