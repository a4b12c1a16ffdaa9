#pragma once

// Discrete Levy processes on the toy Fock space (C (+) k)^{(x) N}, the weak
// Levy axioms checked against their vacuum moments, state semigroups, and
// the classical Markov chain picture on F(G).

#include <functional>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"

namespace qlevy {

/// Largest toy Fock space dimension (1 + dim k)^N built by default.
inline constexpr long long kDefaultTensorBudget = 4096;

class DiscreteLevyProcess {
 public:
  /// Throws Error{not_homomorphism} unless psi is a *-homomorphism within
  /// 1e-10 and Error{budget} when (1 + dim k)^N exceeds `budget`.
  DiscreteLevyProcess(BialgebraDescriptor algebra, KernelMap psi, int steps,
                      long long budget = kDefaultTensorBudget);

  const BialgebraDescriptor& algebra() const { return algebra_; }
  const KernelMap& step_map() const { return psi_; }
  int steps() const { return steps_; }
  int leg_dim() const { return psi_.target_dim; }
  Eigen::Index space_dim() const { return space_dim_; }
  /// psi^{*r} on r consecutive legs; r = 0 is eps.
  const KernelMap& power(int r) const { return powers_[static_cast<std::size_t>(r)]; }
  /// Omega = e0^{(x) N}.
  Vector vacuum() const;

  /// I^{(x) m} (x) psi^{*(n-m)}(b) (x) I^{(x) (N-n)}. Throws Error{precondition}
  /// unless 0 <= m <= n <= N.
  Matrix increment(int m, int n, const Element& b) const;

 private:
  BialgebraDescriptor algebra_;
  KernelMap psi_;
  int steps_;
  Eigen::Index space_dim_;
  std::vector<KernelMap> powers_;
};

Matrix discrete_increment(const DiscreteLevyProcess& process, int m, int n, const Element& b);

/// Increment operators J_{m,n}(b) for a process on N steps.
using IncrementFn = std::function<Matrix(int m, int n, const Element& b)>;

struct AxiomTestSets {
  /// Elements fed to the increments; the basis when empty.
  std::vector<Element> elements;
  /// Largest number of disjoint intervals in the factorization check (2 or 3).
  int max_factors = 3;
};

struct AxiomReport {
  double increment_law = 0.0;   // lambda_{l,n} = lambda_{l,m} * lambda_{m,n}
  double diagonal = 0.0;        // lambda_{m,m} = eps
  double stationarity = 0.0;    // lambda_{m,n} = lambda_{0,n-m}
  double independence = 0.0;    // vacuum moments of disjoint increments factorize
  /// ||lambda_{0,1} - eps||; reported only.
  double one_step_distance = 0.0;
  double tolerance = 1e-10;
  bool pass = false;
};

AxiomReport verify_wqlp_axioms(const BialgebraDescriptor& B, int steps, const Vector& vacuum,
                               const IncrementFn& increment, const AxiomTestSets& sets = {}, double tol = 1e-10);
AxiomReport verify_wqlp_axioms(const DiscreteLevyProcess& process, const AxiomTestSets& sets = {},
                               double tol = 1e-10);

/// lambda_{m,n}(b) = <Omega, J_{m,n}(b) Omega> as a functional.
Functional vacuum_moment(const BialgebraDescriptor& B, const Vector& vacuum, const IncrementFn& increment, int m,
                         int n);

struct StateSemigroupReport {
  std::vector<double> times;
  std::vector<Functional> states;
  std::vector<StateCheck> checks;
  /// ||lambda_s * lambda_t - lambda_{s+t}|| for consecutive grid times s, t.
  std::vector<double> semigroup_residuals;
  double tolerance = 1e-10;
  bool pass = false;
};

/// Throws Error{precondition} if gamma is not a generating functional.
StateSemigroupReport semigroup_of_states(const BialgebraDescriptor& B, const Functional& gamma,
                                         const std::vector<double>& times, double tol = 1e-10);

/// L(x, y) = sum_g r(g) [x g = y] - [x = y] sum_g r(g), with jump rates
/// r(g) = q(d_g, d_g) read off the Schurmann Gram for g != e.
Eigen::MatrixXd classical_rate_matrix(const GroupTable& table, const Functional& gamma);

/// max over grid times and basis of |exp_*(t gamma)(d_y) - exp(t L)_{e,y}|.
double classical_oracle_compare(const GroupTable& table, const Functional& gamma, const std::vector<double>& times);

}  // namespace qlevy
