#include "qlevy/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlevy/linalg.hpp"

namespace qlevy {

namespace {

Vector hat(const Vector& c) {
  Vector v(c.size() + 1);
  v[0] = 1.0;
  v.tail(c.size()) = c;
  return v;
}

void check_noise(const CocycleSpec& spec, const StepFunction& f) {
  if (f.dim() != spec.phi.noise_dim()) throw Error(ErrorCode::shape, "step function dimension differs from dim k");
}

}  // namespace

CocycleSpec CocycleSpec::make(BialgebraDescriptor algebra, KernelMap phi, std::optional<Functional> eta) {
  if (phi.algebra_dim() != algebra.dim) throw Error(ErrorCode::shape, "kernel map has wrong number of blocks");
  for (const auto& b : phi.blocks)
    if (b.rows() != phi.target_dim || b.cols() != phi.target_dim)
      throw Error(ErrorCode::shape, "kernel map block has wrong size");
  Functional e = eta ? *eta : algebra.counit_functional();
  if (e.size() != algebra.dim) throw Error(ErrorCode::shape, "initial functional has wrong dimension");
  return CocycleSpec{std::move(algebra), std::move(phi), std::move(e)};
}

Functional phi_component(const KernelMap& phi, const Vector& c, const Vector& d) {
  if (c.size() != phi.noise_dim() || d.size() != phi.noise_dim())
    throw Error(ErrorCode::shape, "phi_component: vectors must lie in k");
  const Vector ch = hat(c);
  const Vector dh = hat(d);
  Vector out(phi.algebra_dim());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = ch.dot(phi.blocks[static_cast<std::size_t>(i)] * dh);
  return Functional{out};
}

Functional associated_semigroup(const CocycleSpec& spec, const Vector& c, const Vector& d, double t) {
  if (t < 0.0) throw Error(ErrorCode::precondition, "associated_semigroup: t must be nonnegative");
  return conv_exp(spec.algebra, phi_component(spec.phi, c, d), t);
}

Functional form_solution(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double t) {
  if (t < 0.0) throw Error(ErrorCode::precondition, "form_solution: t must be nonnegative");
  check_noise(spec, f);
  check_noise(spec, g);
  Functional lambda = spec.eta;
  if (t == 0.0) return lambda;
  std::vector<double> cuts{0.0};
  for (double b : merged_breakpoints(f, g, 0.0, t)) cuts.push_back(b);
  cuts.push_back(t);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Functional p =
        conv_exp(spec.algebra, phi_component(spec.phi, f.value_at(cuts[i]), g.value_at(cuts[i])), cuts[i + 1] - cuts[i]);
    lambda = convolve(spec.algebra, lambda, p);
  }
  return lambda;
}

double default_horizon(const StepFunction& f, const StepFunction& g) {
  return std::max(f.last_breakpoint(), g.last_breakpoint()) + 1.0;
}

cplx cocycle_matrix_element(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double t,
                            const Element& b, std::optional<double> t_max) {
  const double horizon = t_max ? *t_max : default_horizon(f, g);
  if (!std::isfinite(horizon)) {
    if (f.values().back().squaredNorm() > 0.0 || g.values().back().squaredNorm() > 0.0)
      throw Error(ErrorCode::unbounded_support, "cocycle_matrix_element: final values must vanish for an infinite horizon");
  }
  if (t > horizon) throw Error(ErrorCode::horizon, "cocycle_matrix_element: t exceeds the horizon");
  const double upper = std::isfinite(horizon) ? horizon : std::max(t, default_horizon(f, g));
  return form_solution(spec, f, g, t)(b) * std::exp(inner_product(f, g, 0.0, upper));
}

double verify_cocycle_identity(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double s,
                               double t) {
  if (s < 0.0 || t < 0.0) throw Error(ErrorCode::precondition, "verify_cocycle_identity: times must be nonnegative");
  const Functional whole = form_solution(spec, f, g, s + t);
  const Functional head = form_solution(spec, f, g, s);
  // Both factors start from eta, so the identity only holds for eta = eps.
  const Functional tail = form_solution(spec, f.shifted(s), g.shifted(s), t);
  return distance(whole, convolve(spec.algebra, head, tail));
}

IntegralEquationReport verify_integral_equation(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g,
                                                double t, const Element& b, double step) {
  if (t - step < 0.0) throw Error(ErrorCode::breakpoint_collision, "verify_integral_equation: t - h_fd is negative");
  for (const StepFunction* s : {&f, &g})
    for (double bp : s->breakpoints())
      if (std::abs(bp - t) <= step)
        throw Error(ErrorCode::breakpoint_collision, "verify_integral_equation: breakpoint within h_fd of t");
  IntegralEquationReport r;
  r.step = step;
  r.derivative = (form_solution(spec, f, g, t + step)(b) - form_solution(spec, f, g, t - step)(b)) / (2.0 * step);
  const Functional lam = form_solution(spec, f, g, t);
  r.rhs = convolve(spec.algebra, lam, phi_component(spec.phi, f.value_at(t), g.value_at(t)))(b);
  r.residual = std::abs(r.derivative - r.rhs);
  r.constant = r.residual / (step * step);
  return r;
}

Matrix cp_gram_matrix(const CocycleSpec& spec, double t, const std::vector<StepFunction>& fs,
                      const std::vector<Element>& as, std::optional<double> t_max) {
  if (fs.size() != as.size()) throw Error(ErrorCode::witness_shape, "cp_gram_witness: lists differ in length");
  double horizon = t;
  if (t_max) {
    horizon = *t_max;
  } else {
    for (const auto& f : fs) horizon = std::max(horizon, default_horizon(f, f));
  }
  const auto n = static_cast<Eigen::Index>(fs.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Element ai = spec.algebra.star(as[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = cocycle_matrix_element(spec, fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)], t,
                                       spec.algebra.multiply(ai, as[static_cast<std::size_t>(j)]), horizon);
  }
  return m;
}

double cp_gram_witness(const CocycleSpec& spec, double t, const std::vector<StepFunction>& fs,
                       const std::vector<Element>& as, std::optional<double> t_max) {
  const Matrix m = cp_gram_matrix(spec, t, fs, as, t_max);
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  return linalg::min_hermitian_eigenvalue(m);
}

}  // namespace qlevy
