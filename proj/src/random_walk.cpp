#include "qlevy/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "qlevy/cocycle.hpp"
#include "qlevy/linalg.hpp"
#include "qlevy/schurmann.hpp"

namespace qlevy {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Vector hat(double h, const Vector& c) {
  Vector v(c.size() + 1);
  v[0] = 1.0;
  v.tail(c.size()) = std::sqrt(h) * c;
  return v;
}

}  // namespace

Matrix build_walk_unitary(const Vector& xi, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::precondition, "build_walk_unitary: h must be positive");
  const double load = h * xi.squaredNorm();
  if (load > 1.0 + kStepSlack) throw Error(ErrorCode::step_too_large, "build_walk_unitary: h |xi|^2 > 1", load);
  const double c = std::sqrt(std::max(0.0, 1.0 - load));
  const Eigen::Index k = xi.size();
  Matrix q = Matrix::Zero(k, k);
  if (xi.squaredNorm() > 0.0) q = xi * xi.adjoint() / xi.squaredNorm();
  Matrix u(k + 1, k + 1);
  u(0, 0) = c;
  u.block(0, 1, 1, k) = -std::sqrt(h) * xi.adjoint();
  u.block(1, 0, k, 1) = std::sqrt(h) * xi;
  u.bottomRightCorner(k, k) = c * q + (Matrix::Identity(k, k) - q);
  return u;
}

Matrix build_walk_isometry(const Vector& xi, const Matrix& isometry, double h) {
  if (isometry.rows() != xi.size()) throw Error(ErrorCode::shape, "build_walk_isometry: D must map into the space of xi");
  const Eigen::Index k = isometry.cols();
  const double defect = linalg::max_abs(isometry.adjoint() * isometry - Matrix::Identity(k, k));
  if (defect > 1e-12) throw Error(ErrorCode::not_isometry, "build_walk_isometry: D^* D != I", defect);
  Matrix lift = Matrix::Zero(xi.size() + 1, k + 1);
  lift(0, 0) = 1.0;
  lift.bottomRightCorner(xi.size(), k) = isometry;
  return build_walk_unitary(xi, h) * lift;
}

WalkScheme walk_map(const BialgebraDescriptor& B, const std::vector<Matrix>& pi, const Vector& xi,
                    const std::optional<Matrix>& isometry, double h) {
  if (pi.size() != idx(B.dim)) throw Error(ErrorCode::shape, "walk_map: need one pi block per basis element");
  for (const auto& p : pi)
    if (p.rows() != xi.size() || p.cols() != xi.size()) throw Error(ErrorCode::shape, "walk_map: pi block has wrong size");
  const double hom = homomorphism_residual(B, pi);
  if (hom > 1e-10) throw Error(ErrorCode::not_homomorphism, "walk_map: pi is not a *-representation", hom);
  WalkScheme scheme;
  scheme.h = h;
  scheme.coupling = isometry ? build_walk_isometry(xi, *isometry, h) : build_walk_unitary(xi, h);
  const Matrix& v = scheme.coupling;
  scheme.psi = KernelMap::zero(B.dim, static_cast<int>(v.cols()));
  const Eigen::Index big = xi.size() + 1;
  for (int i = 0; i < B.dim; ++i) {
    Matrix m = Matrix::Zero(big, big);
    m(0, 0) = B.counit[i];
    m.bottomRightCorner(xi.size(), xi.size()) = pi[idx(i)];
    scheme.psi.blocks[idx(i)] = v.adjoint() * m * v;
  }
  return scheme;
}

KernelMap rescale(const KernelMap& phi, double h) {
  KernelMap out = phi;
  const double s = 1.0 / std::sqrt(h);
  for (auto& b : out.blocks) {
    b.row(0) *= s;
    b.col(0) *= s;
  }
  return out;
}

DifferenceIdentity scaled_difference_identity(const BialgebraDescriptor& B, const KernelMap& phi,
                                              const std::vector<Matrix>& pi, const Vector& xi, double h) {
  const Eigen::Index k = xi.size();
  if (phi.noise_dim() != k || phi.algebra_dim() != B.dim)
    throw Error(ErrorCode::shape, "scaled_difference_identity: phi does not match (pi, xi)");
  const KernelMap psi = walk_map(B, pi, xi, std::nullopt, h).psi;
  const KernelMap lhs = phi - rescale(psi - KernelMap::scalar(B.counit_functional(), static_cast<int>(k + 1)), h);
  const double c = std::sqrt(std::max(0.0, 1.0 - h * xi.squaredNorm()));
  const Matrix x = xi * xi.adjoint();
  DifferenceIdentity out;
  for (int i = 0; i < B.dim; ++i) {
    const cplx g = phi.blocks[idx(i)](0, 0);
    const Matrix nu = pi[idx(i)] - B.counit[i] * Matrix::Identity(k, k);
    Matrix phi1 = Matrix::Zero(k + 1, k + 1);
    phi1.block(0, 1, 1, k) = g * xi.adjoint();
    phi1.block(1, 0, k, 1) = g * xi;
    phi1.bottomRightCorner(k, k) = x * nu + nu * x;
    Matrix phi2 = Matrix::Zero(k + 1, k + 1);
    phi2.bottomRightCorner(k, k) = g * x;
    const Matrix rhs = (h / (1.0 + c)) * phi1 - (h * h / ((1.0 + c) * (1.0 + c))) * phi2;
    out.residual = std::max(out.residual, linalg::max_abs(lhs.blocks[idx(i)] - rhs));
    out.lhs_norm = std::max(out.lhs_norm, linalg::max_abs(lhs.blocks[idx(i)]));
  }
  return out;
}

Functional walk_step_functional(const KernelMap& psi, double h, const Vector& c, const Vector& d) {
  if (c.size() != psi.noise_dim() || d.size() != psi.noise_dim())
    throw Error(ErrorCode::shape, "walk_step_functional: vectors must lie in k");
  const Vector v = hat(h, c);
  const Vector u = hat(h, d);
  Vector out(psi.algebra_dim());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v.dot(psi.blocks[static_cast<std::size_t>(i)] * u);
  return Functional{out};
}

Functional walk_functional(const BialgebraDescriptor& B, const KernelMap& psi, double h, int n, const StepFunction& f,
                           const StepFunction& g) {
  if (n < 0) throw Error(ErrorCode::precondition, "walk_functional: n must be nonnegative");
  Functional acc = B.counit_functional();
  for (int j = 0; j < n; ++j) {
    const double a = j * h;
    acc = convolve(B, acc, walk_step_functional(psi, h, f.average(a, a + h), g.average(a, a + h)));
  }
  return acc;
}

cplx walk_matrix_element(const BialgebraDescriptor& B, const KernelMap& psi, double h, int n, const StepFunction& f,
                         const StepFunction& g, const Element& b, std::optional<double> t_max) {
  const double horizon = t_max ? *t_max : std::max(n * h, default_horizon(f, g));
  if (n * h > horizon + 1e-12) throw Error(ErrorCode::horizon, "walk_matrix_element: n h exceeds the horizon");
  return walk_functional(B, psi, h, n, f, g)(b) * std::exp(inner_product(f, g, n * h, horizon));
}

std::vector<ConvergenceRow> convergence_table(const BialgebraDescriptor& B, const KernelMap& phi,
                                              const WalkSource& source, double horizon_t,
                                              const std::vector<StepPair>& witnesses,
                                              const std::vector<Element>& elements,
                                              const std::vector<double>& h_grid, std::optional<double> t_max) {
  double horizon = horizon_t;
  if (t_max) {
    horizon = *t_max;
  } else {
    for (const auto& [f, g] : witnesses) horizon = std::max(horizon, default_horizon(f, g));
  }
  const CocycleSpec spec = CocycleSpec::make(B, phi);

  const auto error_at = [&](double h) {
    const KernelMap psi = walk_map(B, source.pi, source.xi, source.isometry, h).psi;
    const int steps = static_cast<int>(std::floor(horizon_t / h + 1e-9));
    double err = 0.0;
    for (const auto& [f, g] : witnesses) {
      Functional walk = B.counit_functional();
      for (int n = 0; n <= steps; ++n) {
        if (n > 0) {
          const double a = (n - 1) * h;
          walk = convolve(B, walk, walk_step_functional(psi, h, f.average(a, a + h), g.average(a, a + h)));
        }
        const Functional exact = form_solution(spec, f, g, n * h);
        const cplx walk_tail = std::exp(inner_product(f, g, n * h, horizon));
        const cplx exact_tail = std::exp(inner_product(f, g, 0.0, horizon));
        for (const auto& b : elements) err = std::max(err, std::abs(walk(b) * walk_tail - exact(b) * exact_tail));
      }
    }
    return err;
  };

  std::vector<std::future<double>> jobs;
  jobs.reserve(h_grid.size());
  for (double h : h_grid) jobs.push_back(std::async(std::launch::async, error_at, h));
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    ConvergenceRow row{h_grid[i], jobs[i].get(), std::nullopt};
    if (i > 0 && rows.back().err > 0.0) row.ratio = row.err / rows.back().err;
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> dyadic_grid(int from, int to) {
  std::vector<double> out;
  for (int p = from; p <= to; ++p) out.push_back(std::ldexp(1.0, -p));
  return out;
}

}  // namespace qlevy
