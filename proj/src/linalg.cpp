#include "qlevy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

namespace qlevy::linalg {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix& a) {
  const Eigen::Index n = a.rows();
  HermitianEigen out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  const Matrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  Matrix vecs = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector col = vecs.col(j);
    fix_phase(col);
    vecs.col(j) = col;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (vals[x] != vals[y]) return vals[x] > vals[y];
    return lex_less(vecs.col(x), vecs.col(y));
  });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = vals[order[static_cast<std::size_t>(j)]];
    out.vectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

double min_hermitian_eigenvalue(const Matrix& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  const Matrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.size() == 0) return a;
  return a.exp();
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = s.size() > 0 ? rel_tol * std::max(s(0), 1e-300) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

Matrix least_squares(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return Matrix::Zero(0, b.cols());
  if (a.rows() == 0) return Matrix::Zero(a.cols(), b.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(1e-12);
  return cod.solve(b);
}

cplx fix_phase(Eigen::Ref<Vector> v, double eps) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > eps) {
      const cplx phase = std::conj(v[i]) / m;
      v *= phase;
      v[i] = cplx(m, 0.0);
      return phase;
    }
  }
  return cplx(1.0, 0.0);
}

}  // namespace qlevy::linalg
