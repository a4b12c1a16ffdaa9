#include "qlevy/levy_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "qlevy/linalg.hpp"
#include "qlevy/schurmann.hpp"

namespace qlevy {

namespace {

struct Interval {
  int m;
  int n;
};

bool disjoint(const Interval& a, const Interval& b) { return a.n <= b.m || b.n <= a.m; }

}  // namespace

DiscreteLevyProcess::DiscreteLevyProcess(BialgebraDescriptor algebra, KernelMap psi, int steps, long long budget)
    : algebra_(std::move(algebra)), psi_(std::move(psi)), steps_(steps) {
  if (steps_ < 0) throw Error(ErrorCode::precondition, "DiscreteLevyProcess: N must be nonnegative");
  if (psi_.algebra_dim() != algebra_.dim) throw Error(ErrorCode::shape, "DiscreteLevyProcess: psi has wrong number of blocks");
  double hom = 0.0;
  for (int i = 0; i < algebra_.dim; ++i) {
    const Element ei = algebra_.basis(i);
    hom = std::max(hom, linalg::max_abs(psi_(algebra_.star(ei)) - psi_.blocks[static_cast<std::size_t>(i)].adjoint()));
    for (int j = 0; j < algebra_.dim; ++j)
      hom = std::max(hom, linalg::max_abs(psi_(algebra_.multiply(ei, algebra_.basis(j))) -
                                          psi_.blocks[static_cast<std::size_t>(i)] *
                                              psi_.blocks[static_cast<std::size_t>(j)]));
  }
  if (hom > 1e-10) throw Error(ErrorCode::not_homomorphism, "DiscreteLevyProcess: psi is not a *-homomorphism", hom);
  long long dim = 1;
  for (int r = 0; r < steps_; ++r) {
    dim *= psi_.target_dim;
    if (dim > budget) throw Error(ErrorCode::budget, "DiscreteLevyProcess: (1 + dim k)^N exceeds the tensor budget");
  }
  space_dim_ = static_cast<Eigen::Index>(dim);
  powers_.push_back(KernelMap::scalar(algebra_.counit_functional(), 1));
  for (int r = 1; r <= steps_; ++r)
    powers_.push_back(convolve_kernel(algebra_, powers_.back(), psi_, std::numeric_limits<double>::infinity()));
}

Vector DiscreteLevyProcess::vacuum() const {
  Vector omega = Vector::Zero(space_dim_);
  omega[0] = 1.0;
  return omega;
}

Matrix DiscreteLevyProcess::increment(int m, int n, const Element& b) const {
  if (m < 0 || m > n || n > steps_) throw Error(ErrorCode::precondition, "increment: need 0 <= m <= n <= N");
  Eigen::Index before = 1;
  Eigen::Index after = 1;
  for (int r = 0; r < m; ++r) before *= psi_.target_dim;
  for (int r = n; r < steps_; ++r) after *= psi_.target_dim;
  return linalg::kron(Matrix::Identity(before, before),
                      linalg::kron(power(n - m)(b), Matrix::Identity(after, after)));
}

Matrix discrete_increment(const DiscreteLevyProcess& process, int m, int n, const Element& b) {
  return process.increment(m, n, b);
}

Functional vacuum_moment(const BialgebraDescriptor& B, const Vector& vacuum, const IncrementFn& increment, int m,
                         int n) {
  Vector out(B.dim);
  for (int i = 0; i < B.dim; ++i) out[i] = vacuum.dot(increment(m, n, B.basis(i)) * vacuum);
  return Functional{out};
}

AxiomReport verify_wqlp_axioms(const BialgebraDescriptor& B, int steps, const Vector& vacuum,
                               const IncrementFn& increment, const AxiomTestSets& sets, double tol) {
  AxiomReport report;
  report.tolerance = tol;
  std::vector<Element> elements = sets.elements;
  if (elements.empty())
    for (int i = 0; i < B.dim; ++i) elements.push_back(B.basis(i));

  const auto n1 = static_cast<std::size_t>(steps + 1);
  std::vector<std::vector<Functional>> lam(n1, std::vector<Functional>(n1));
  for (int m = 0; m <= steps; ++m)
    for (int n = m; n <= steps; ++n) lam[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] =
        vacuum_moment(B, vacuum, increment, m, n);
  const auto at = [&](int m, int n) -> const Functional& {
    return lam[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
  };
  const Functional eps = B.counit_functional();

  for (int l = 0; l <= steps; ++l)
    for (int m = l; m <= steps; ++m) {
      for (int n = m; n <= steps; ++n)
        report.increment_law = std::max(report.increment_law, distance(at(l, n), convolve(B, at(l, m), at(m, n))));
      report.stationarity = std::max(report.stationarity, distance(at(l, m), at(0, m - l)));
    }
  for (int m = 0; m <= steps; ++m) report.diagonal = std::max(report.diagonal, distance(at(m, m), eps));
  if (steps >= 1) report.one_step_distance = distance(at(0, 1), eps);

  std::vector<Interval> intervals;
  for (int m = 0; m < steps; ++m)
    for (int n = m + 1; n <= steps; ++n) intervals.push_back({m, n});

  // Ordered families of pairwise disjoint intervals with one element each.
  std::vector<Interval> chosen;
  std::vector<std::size_t> picks;
  const auto check_family = [&]() {
    const std::size_t k = chosen.size();
    picks.assign(k, 0);
    while (true) {
      Matrix prod = Matrix::Identity(vacuum.size(), vacuum.size());
      cplx expected = 1.0;
      for (std::size_t a = 0; a < k; ++a) {
        const Element& x = elements[picks[a]];
        prod = prod * increment(chosen[a].m, chosen[a].n, x);
        expected *= at(chosen[a].m, chosen[a].n)(x);
      }
      report.independence = std::max(report.independence, std::abs(vacuum.dot(prod * vacuum) - expected));
      std::size_t a = 0;
      while (a < k && ++picks[a] == elements.size()) picks[a++] = 0;
      if (a == k) break;
    }
  };
  const auto extend = [&](auto&& self) -> void {
    if (chosen.size() >= 2) check_family();
    if (static_cast<int>(chosen.size()) == sets.max_factors) return;
    for (const auto& iv : intervals) {
      if (!std::all_of(chosen.begin(), chosen.end(), [&](const Interval& c) { return disjoint(c, iv); })) continue;
      chosen.push_back(iv);
      self(self);
      chosen.pop_back();
    }
  };
  extend(extend);

  report.pass = report.increment_law <= tol && report.diagonal <= tol && report.stationarity <= tol &&
                report.independence <= tol;
  return report;
}

AxiomReport verify_wqlp_axioms(const DiscreteLevyProcess& process, const AxiomTestSets& sets, double tol) {
  return verify_wqlp_axioms(
      process.algebra(), process.steps(), process.vacuum(),
      [&](int m, int n, const Element& b) { return process.increment(m, n, b); }, sets, tol);
}

StateSemigroupReport semigroup_of_states(const BialgebraDescriptor& B, const Functional& gamma,
                                         const std::vector<double>& times, double tol) {
  const GeneratingReport gen = check_generating(B, gamma);
  if (!gen.pass)
    throw Error(ErrorCode::precondition, "semigroup_of_states: gamma is not a generating functional",
                std::max({gen.reality, -gen.conditional_positivity, std::abs(gen.value_at_unit)}));
  StateSemigroupReport report;
  report.tolerance = tol;
  report.times = times;
  report.pass = true;
  for (double t : times) {
    if (t < 0.0) throw Error(ErrorCode::precondition, "semigroup_of_states: times must be nonnegative");
    report.states.push_back(conv_exp(B, gamma, t));
    report.checks.push_back(functional_is_state(B, report.states.back(), tol));
    report.pass = report.pass && report.checks.back().is_state;
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const Functional joint = conv_exp(B, gamma, times[i] + times[i + 1]);
    const double r = distance(convolve(B, report.states[i], report.states[i + 1]), joint);
    report.semigroup_residuals.push_back(r);
    report.pass = report.pass && r <= tol;
  }
  return report;
}

Eigen::MatrixXd classical_rate_matrix(const GroupTable& table, const Functional& gamma) {
  const int e = check_group_table(table);
  const auto n = static_cast<Eigen::Index>(table.size());
  if (gamma.size() != n) throw Error(ErrorCode::shape, "classical_rate_matrix: gamma must live on F(G)");
  const BialgebraDescriptor B = function_algebra(table);
  const Matrix q = schurmann_gram(B, gamma);
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index g = 0; g < n; ++g) {
    if (g == e) continue;
    const double r = q(g, g).real();
    for (Eigen::Index x = 0; x < n; ++x) {
      rates(x, table[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)]) += r;
      rates(x, x) -= r;
    }
  }
  return rates;
}

double classical_oracle_compare(const GroupTable& table, const Functional& gamma, const std::vector<double>& times) {
  const BialgebraDescriptor B = function_algebra(table);
  const GeneratingReport gen = check_generating(B, gamma);
  if (!gen.pass) throw Error(ErrorCode::precondition, "classical_oracle_compare: gamma is not a generating functional");
  const int e = check_group_table(table);
  const Eigen::MatrixXd rates = classical_rate_matrix(table, gamma);
  double worst = 0.0;
  for (double t : times) {
    const Functional lam = conv_exp(B, gamma, t);
    const Eigen::MatrixXd p = (t * rates).exp();
    for (int y = 0; y < B.dim; ++y) worst = std::max(worst, std::abs(lam.at(y) - p(e, y)));
  }
  return worst;
}

}  // namespace qlevy
