#pragma once

// Exponential-vector matrix elements of the convolution cocycle driven by a
// kernel map phi, computed from the splitting formula over the constancy
// intervals of step functions.
//
// Convention: lambda^{f,g}_t(b) = <e(f_[0,t[), l_t(b) e(g_[0,t[)>, conjugate-linear in f.

#include <optional>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"
#include "qlevy/step_function.hpp"

namespace qlevy {

struct CocycleSpec {
  BialgebraDescriptor algebra;
  KernelMap phi;
  Functional eta;

  /// eta defaults to the counit. Throws Error{shape} on mismatched dimensions.
  static CocycleSpec make(BialgebraDescriptor algebra, KernelMap phi, std::optional<Functional> eta = std::nullopt);
};

/// b -> <(1, c), phi(b) (1, d)>.
Functional phi_component(const KernelMap& phi, const Vector& c, const Vector& d);

/// p^{c,d}_t = exp_*(t phi_{c,d}). Throws Error{precondition} for t < 0.
Functional associated_semigroup(const CocycleSpec& spec, const Vector& c, const Vector& d, double t);

/// eta * p^{c_0,d_0}_{t_1-t_0} * ... * p^{c_n,d_n}_{t-t_n} over the merged
/// breakpoints of f and g in ]0, t[. Throws Error{precondition} for t < 0.
Functional form_solution(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double t);

/// max breakpoint of f and g plus one.
double default_horizon(const StepFunction& f, const StepFunction& g);

/// lambda^{f,g}_t(b) exp(<f, g> over [0, T_max]). Throws Error{horizon} when
/// t > T_max and Error{unbounded_support} when T_max is infinite while a
/// final value is nonzero.
cplx cocycle_matrix_element(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double t,
                            const Element& b, std::optional<double> t_max = std::nullopt);

/// || lambda_{s+t} - lambda_s * lambda^{f(.+s), g(.+s)}_t || in coefficients.
double verify_cocycle_identity(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g, double s,
                               double t);

struct IntegralEquationReport {
  cplx derivative;
  cplx rhs;
  double residual = 0.0;
  double step = 0.0;
  /// residual / step^2.
  double constant = 0.0;
};

inline constexpr double kDefaultFdStep = 1e-4;

/// Centered difference of t -> lambda_t(b) against (lambda_t * phi_{f(t),g(t)})(b).
/// Throws Error{breakpoint_collision} if a breakpoint lies within `step` of t.
IntegralEquationReport verify_integral_equation(const CocycleSpec& spec, const StepFunction& f, const StepFunction& g,
                                                double t, const Element& b, double step = kDefaultFdStep);

/// M_ij = <e(f_i), l_t(a_i^* a_j) e(f_j)> with a shared horizon.
Matrix cp_gram_matrix(const CocycleSpec& spec, double t, const std::vector<StepFunction>& fs,
                      const std::vector<Element>& as, std::optional<double> t_max = std::nullopt);

/// Smallest eigenvalue of the Hermitian part of cp_gram_matrix. Throws
/// Error{witness_shape} when the lists differ in length.
double cp_gram_witness(const CocycleSpec& spec, double t, const std::vector<StepFunction>& fs,
                       const std::vector<Element>& as, std::optional<double> t_max = std::nullopt);

}  // namespace qlevy
