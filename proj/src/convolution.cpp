#include "qlevy/convolution.hpp"

#include <cmath>
#include <string>

#include "qlevy/linalg.hpp"

namespace qlevy {

KernelMap KernelMap::zero(int dim, int target_dim) {
  KernelMap out;
  out.target_dim = target_dim;
  out.blocks.assign(static_cast<std::size_t>(dim), Matrix::Zero(target_dim, target_dim));
  return out;
}

KernelMap KernelMap::scalar(const Functional& chi, int target_dim) {
  KernelMap out;
  out.target_dim = target_dim;
  for (Eigen::Index i = 0; i < chi.size(); ++i)
    out.blocks.push_back(chi.at(i) * Matrix::Identity(target_dim, target_dim));
  return out;
}

Matrix KernelMap::operator()(const Element& b) const {
  Matrix out = Matrix::Zero(target_dim, target_dim);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const cplx c = b.coeffs[static_cast<Eigen::Index>(i)];
    if (c != cplx(0.0)) out += c * blocks[i];
  }
  return out;
}

Functional KernelMap::gamma() const {
  Vector g(algebra_dim());
  for (std::size_t i = 0; i < blocks.size(); ++i) g[static_cast<Eigen::Index>(i)] = blocks[i](0, 0);
  return Functional{g};
}

KernelMap& KernelMap::operator+=(const KernelMap& other) {
  if (other.target_dim != target_dim || other.blocks.size() != blocks.size())
    throw Error(ErrorCode::shape, "kernel map shapes differ");
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] += other.blocks[i];
  return *this;
}

KernelMap& KernelMap::operator*=(cplx s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

KernelMap operator+(KernelMap a, const KernelMap& b) { return a += b; }
KernelMap operator-(KernelMap a, const KernelMap& b) { return a += (-1.0) * b; }
KernelMap operator*(cplx s, KernelMap a) { return a *= s; }

double hermiticity_residual(const BialgebraDescriptor& B, const KernelMap& phi) {
  double r = 0.0;
  for (int i = 0; i < B.dim; ++i) {
    const Matrix lhs = phi(B.star(B.basis(i)));
    r = std::max(r, linalg::max_abs(lhs - phi.blocks[static_cast<std::size_t>(i)].adjoint()));
  }
  return r;
}

Matrix choi_matrix(const BialgebraDescriptor& B, const KernelMap& phi) {
  const int d = B.dim;
  const int n = phi.target_dim;
  Matrix choi(static_cast<Eigen::Index>(d) * n, static_cast<Eigen::Index>(d) * n);
  for (int i = 0; i < d; ++i) {
    const Element si = B.star(B.basis(i));
    for (int j = 0; j < d; ++j)
      choi.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n, n) =
          phi(B.multiply(si, B.basis(j)));
  }
  return choi;
}

double choi_min_eigenvalue(const BialgebraDescriptor& B, const KernelMap& phi) {
  return linalg::min_hermitian_eigenvalue(choi_matrix(B, phi));
}

double cp_cb_norm(const BialgebraDescriptor& B, const KernelMap& phi, double tol) {
  if (choi_min_eigenvalue(B, phi) < -tol) return -1.0;
  return linalg::op_norm(phi(B.one()));
}

Functional convolve(const BialgebraDescriptor& B, const Functional& a, const Functional& b) {
  Vector out(B.dim);
  const Vector ta = a.coeffs;
  for (int i = 0; i < B.dim; ++i) out[i] = ta.transpose() * B.coproduct[static_cast<std::size_t>(i)] * b.coeffs;
  return Functional{out};
}

KernelMap convolve_kernel(const BialgebraDescriptor& B, const KernelMap& a, const KernelMap& b,
                          double budget) {
  const double n = static_cast<double>(a.target_dim) * b.target_dim;
  if (n * n * B.dim > budget)
    throw Error(ErrorCode::budget, "convolve_kernel: target dimension " + std::to_string(static_cast<long long>(n)) +
                                       " exceeds budget");
  KernelMap out = KernelMap::zero(B.dim, a.target_dim * b.target_dim);
  for (int i = 0; i < B.dim; ++i) {
    const Matrix& c = B.coproduct[static_cast<std::size_t>(i)];
    for (int j = 0; j < B.dim; ++j)
      for (int k = 0; k < B.dim; ++k)
        if (c(j, k) != cplx(0.0))
          out.blocks[static_cast<std::size_t>(i)] +=
              c(j, k) * linalg::kron(a.blocks[static_cast<std::size_t>(j)], b.blocks[static_cast<std::size_t>(k)]);
  }
  return out;
}

Matrix r_matrix(const BialgebraDescriptor& B, const Functional& phi) {
  Matrix r(B.dim, B.dim);
  for (int i = 0; i < B.dim; ++i) r.col(i) = B.coproduct[static_cast<std::size_t>(i)] * phi.coeffs;
  return r;
}

LiftedMap r_lift(const BialgebraDescriptor& B, const KernelMap& phi) {
  LiftedMap out;
  out.target_dim = phi.target_dim;
  const auto n = static_cast<Eigen::Index>(phi.target_dim);
  for (int i = 0; i < B.dim; ++i) {
    const Matrix& c = B.coproduct[static_cast<std::size_t>(i)];
    std::vector<Matrix> row(static_cast<std::size_t>(B.dim), Matrix::Zero(n, n));
    for (int j = 0; j < B.dim; ++j)
      for (int k = 0; k < B.dim; ++k)
        if (c(j, k) != cplx(0.0)) row[static_cast<std::size_t>(j)] += c(j, k) * phi.blocks[static_cast<std::size_t>(k)];
    out.parts.push_back(std::move(row));
  }
  return out;
}

KernelMap e_slice(const BialgebraDescriptor& B, const LiftedMap& psi) {
  if (psi.parts.size() != static_cast<std::size_t>(B.dim))
    throw Error(ErrorCode::shape, "e_slice: expected one entry per basis element");
  KernelMap out = KernelMap::zero(B.dim, psi.target_dim);
  for (int i = 0; i < B.dim; ++i) {
    const auto& row = psi.parts[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(B.dim))
      throw Error(ErrorCode::shape, "e_slice: each image needs dim coefficients");
    for (int j = 0; j < B.dim; ++j) {
      const Matrix& m = row[static_cast<std::size_t>(j)];
      if (m.rows() != psi.target_dim || m.cols() != psi.target_dim)
        throw Error(ErrorCode::shape, "e_slice: coefficient matrix has wrong size");
      out.blocks[static_cast<std::size_t>(i)] += B.counit[j] * m;
    }
  }
  return out;
}

int series_truncation(double norm) {
  // log of norm^{N+1}/(N+1)! + norm, kept in log space to avoid overflow.
  int n = 0;
  double log_term = std::log(std::max(norm, 1e-300));  // N = 0
  while (log_term + norm > std::log(1e-12)) {
    ++n;
    log_term += std::log(std::max(norm, 1e-300)) - std::log(static_cast<double>(n + 1));
    if (n > 10000) break;
  }
  return n;
}

Functional conv_exp(const BialgebraDescriptor& B, const Functional& gamma, double t, ExpAlgorithm algorithm) {
  const Functional eps = B.counit_functional();
  if (t == 0.0) return eps;
  if (algorithm == ExpAlgorithm::rmap) {
    const Matrix e = linalg::expm(t * r_matrix(B, gamma));
    return Functional{e.transpose() * B.counit};
  }
  const Functional tg{t * gamma.coeffs};
  const int terms = series_truncation(linalg::op_norm(r_matrix(B, tg)));
  Functional term = eps;
  Functional sum = eps;
  for (int n = 1; n <= terms; ++n) {
    term = convolve(B, term, tg);
    term.coeffs /= static_cast<double>(n);
    sum.coeffs += term.coeffs;
  }
  return sum;
}

double distance(const Functional& a, const Functional& b) { return linalg::max_abs(a.coeffs - b.coeffs); }

}  // namespace qlevy
