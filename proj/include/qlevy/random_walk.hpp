#pragma once

// Repeated-interaction walks: one-step maps psi^(h) built from a unitary (or
// isometric) coupling of the vacuum line with the noise space, and their
// convolution iterates evaluated against exponential vectors.

#include <optional>
#include <utility>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"
#include "qlevy/step_function.hpp"

namespace qlevy {

/// Slack allowed above h |xi|^2 = 1 before a step counts as too large.
inline constexpr double kStepSlack = 1e-14;

/// [[c, -sqrt(h) <xi|], [sqrt(h) |xi>, c Q + (I - Q)]], c = sqrt(1 - h |xi|^2),
/// Q the projection onto C xi. Throws Error{step_too_large} if h |xi|^2 > 1.
Matrix build_walk_unitary(const Vector& xi, double h);

/// U (1 (+) D). Throws Error{not_isometry} unless D^* D = I within 1e-12.
Matrix build_walk_isometry(const Vector& xi, const Matrix& isometry, double h);

struct WalkScheme {
  double h = 0.0;
  /// Square unitary when D = I, otherwise an isometry.
  Matrix coupling;
  KernelMap psi;
};

/// psi(e_i) = V^* (eps(e_i) (+) pi(e_i)) V. Throws Error{not_homomorphism}
/// if pi is not a *-representation within 1e-10.
WalkScheme walk_map(const BialgebraDescriptor& B, const std::vector<Matrix>& pi, const Vector& xi,
                    const std::optional<Matrix>& isometry, double h);

/// Conjugation by diag(h^{-1/2}, I).
KernelMap rescale(const KernelMap& phi, double h);

struct DifferenceIdentity {
  double residual = 0.0;
  /// Max-abs size of phi - Sigma_h(psi - eps I).
  double lhs_norm = 0.0;
};

/// Compares phi - Sigma_h(psi^(h) - eps I) with
/// h/(1+c) phi_1 - h^2/(1+c)^2 phi_2 on the basis.
DifferenceIdentity scaled_difference_identity(const BialgebraDescriptor& B, const KernelMap& phi,
                                              const std::vector<Matrix>& pi, const Vector& xi, double h);

/// b -> <v, psi(b) u> with v = (1, sqrt(h) c), u = (1, sqrt(h) d).
Functional walk_step_functional(const KernelMap& psi, double h, const Vector& c, const Vector& d);

/// q_1 * ... * q_n for the first n walk steps. Step j pairs the averages of f
/// and g over [(j-1)h, jh), which are the left-endpoint values when every
/// breakpoint sits on the grid.
Functional walk_functional(const BialgebraDescriptor& B, const KernelMap& psi, double h, int n, const StepFunction& f,
                           const StepFunction& g);

/// <e(f), psi_n(b) e(g)> on the toy Fock space, with the exponential tail
/// over [nh, T_max]. Throws Error{horizon} if n h > T_max.
cplx walk_matrix_element(const BialgebraDescriptor& B, const KernelMap& psi, double h, int n, const StepFunction& f,
                         const StepFunction& g, const Element& b, std::optional<double> t_max = std::nullopt);

struct ConvergenceRow {
  double h = 0.0;
  double err = 0.0;
  std::optional<double> ratio;
};

struct WalkSource {
  std::vector<Matrix> pi;
  Vector xi;
  std::optional<Matrix> isometry;
};

using StepPair = std::pair<StepFunction, StepFunction>;

/// err(h) = max over t = n h <= T, witness pairs and elements of the gap
/// between walk and cocycle matrix elements. Rows follow the order of h_grid.
std::vector<ConvergenceRow> convergence_table(const BialgebraDescriptor& B, const KernelMap& phi,
                                              const WalkSource& source, double horizon_t,
                                              const std::vector<StepPair>& witnesses,
                                              const std::vector<Element>& elements,
                                              const std::vector<double>& h_grid,
                                              std::optional<double> t_max = std::nullopt);

/// Dyadic grid 2^-from, ..., 2^-to.
std::vector<double> dyadic_grid(int from, int to);

}  // namespace qlevy
