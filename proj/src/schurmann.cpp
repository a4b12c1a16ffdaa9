#include "qlevy/schurmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlevy/linalg.hpp"

namespace qlevy {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

double max_eig(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return -linalg::min_hermitian_eigenvalue(-a);
}

// Stack nu(e_i) = pi(e_i) - eps_i I vertically.
Matrix stacked_nu(const BialgebraDescriptor& B, const std::vector<Matrix>& pi, int k) {
  Matrix out(static_cast<Eigen::Index>(B.dim) * k, k);
  for (int i = 0; i < B.dim; ++i)
    out.block(static_cast<Eigen::Index>(i) * k, 0, k, k) = pi[idx(i)] - B.counit[i] * Matrix::Identity(k, k);
  return out;
}

}  // namespace

GeneratingReport check_generating(const BialgebraDescriptor& B, const Functional& gamma, double tol) {
  GeneratingReport r;
  r.tolerance = tol;
  r.reality = reality_residual(B, gamma);
  r.value_at_unit = gamma(B.one());
  const Matrix kernel = linalg::null_space(B.counit.transpose());
  if (kernel.cols() == 0) {
    r.conditional_positivity = 0.0;
  } else {
    // (sum v_i e_i)^* (sum w_j e_j) = sum conj(v_i) w_j e_i^* e_j
    const Matrix g = functional_gram(B, gamma);
    r.conditional_positivity = linalg::min_hermitian_eigenvalue(kernel.adjoint() * g * kernel);
  }
  r.pass = r.reality <= tol && r.conditional_positivity >= -tol && std::abs(r.value_at_unit) <= tol;
  return r;
}

Matrix schurmann_gram(const BialgebraDescriptor& B, const Functional& gamma) {
  const Matrix g = functional_gram(B, gamma);
  Matrix q(B.dim, B.dim);
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      q(i, j) = g(i, j) - std::conj(gamma.at(i)) * B.counit[j] - std::conj(B.counit[i]) * gamma.at(j);
  return q;
}

SchurmannTriple gns_triple(const BialgebraDescriptor& B, const Functional& gamma, double tol) {
  const GeneratingReport check = check_generating(B, gamma, std::max(tol, kDefaultTol));
  if (!check.pass)
    throw Error(ErrorCode::precondition, "gns_triple: functional is not a generating functional",
                std::max({check.reality, -check.conditional_positivity, std::abs(check.value_at_unit)}));

  SchurmannTriple t;
  t.gamma = gamma;
  t.gram = schurmann_gram(B, gamma);
  const linalg::HermitianEigen eig = linalg::hermitian_eigen(t.gram);
  const double top = eig.values.size() > 0 ? eig.values[0] : 0.0;
  int k = 0;
  if (top > 1e-14)
    while (k < eig.values.size() && eig.values[k] > tol * top) ++k;
  t.noise_dim = k;

  // d(e_j) = Lambda^{1/2} U^* e_j, so <d(e_i), d(e_j)> = Q_ij.
  const Eigen::VectorXd sqrt_vals = eig.values.head(k).cwiseSqrt();
  const Matrix u = eig.vectors.leftCols(k);
  Matrix d = sqrt_vals.asDiagonal() * u.adjoint();
  const Eigen::VectorXd inv_sqrt = sqrt_vals.cwiseInverse();

  const double scale = std::max(1.0, std::sqrt(std::max(top, 0.0)));
  std::vector<Matrix> pi;
  for (int i = 0; i < B.dim; ++i) {
    const Element ei = B.basis(i);
    Matrix m(k, B.dim);
    for (int j = 0; j < B.dim; ++j)
      m.col(j) = d * B.multiply(ei, B.basis(j)).coeffs - B.counit[j] * d.col(i);
    Matrix p = m * u * inv_sqrt.asDiagonal();
    const double res = linalg::max_abs(p * d - m);
    if (res > 1e-8 * scale)
      throw Error(ErrorCode::inconsistent_pi, "gns_triple: pi(a) d(b) = d(ab) - eps(b) d(a) is unsolvable", res);
    pi.push_back(std::move(p));
  }

  std::optional<Vector> xi;
  if (k > 0) {
    const Matrix nu = stacked_nu(B, pi, k);
    const Vector rhs = Eigen::Map<const Vector>(d.data(), d.size());
    Vector x = linalg::least_squares(nu, rhs);
    if (linalg::max_abs(nu * x - rhs) <= 1e-8 * scale) {
      // Rotate one basis vector of k so the first nonzero coordinate of xi is
      // real positive; d and pi follow along.
      Eigen::Index a = 0;
      while (a < x.size() && std::abs(x[a]) <= 1e-12) ++a;
      if (a < x.size()) {
        const cplx phase = std::conj(x[a]) / std::abs(x[a]);
        x[a] = std::abs(x[a]);
        d.row(a) *= phase;
        for (auto& p : pi) {
          p.row(a) *= phase;
          p.col(a) *= std::conj(phase);
        }
      }
      xi = x;
    }
  } else {
    xi = Vector(0);
  }

  t.pi = std::move(pi);
  for (int i = 0; i < B.dim; ++i) t.delta.push_back(d.col(i));
  t.xi = xi;
  return t;
}

double homomorphism_residual(const BialgebraDescriptor& B, const std::vector<Matrix>& pi) {
  const auto apply = [&](const Element& a) {
    Matrix out = Matrix::Zero(pi.front().rows(), pi.front().cols());
    for (int i = 0; i < B.dim; ++i) out += a.coeffs[i] * pi[idx(i)];
    return out;
  };
  if (pi.empty() || pi.front().size() == 0) return 0.0;
  double r = 0.0;
  for (int i = 0; i < B.dim; ++i) {
    const Element ei = B.basis(i);
    r = std::max(r, linalg::max_abs(apply(B.star(ei)) - pi[idx(i)].adjoint()));
    for (int j = 0; j < B.dim; ++j)
      r = std::max(r, linalg::max_abs(apply(B.multiply(ei, B.basis(j))) - pi[idx(i)] * pi[idx(j)]));
  }
  return r;
}

KernelMap assemble_structure_map(const BialgebraDescriptor& B, const SchurmannTriple& triple, DeltaSource source) {
  const int k = triple.noise_dim;
  if (source == DeltaSource::implementing_vector && !triple.xi)
    throw Error(ErrorCode::precondition, "assemble_structure_map: triple has no implementing vector");
  std::vector<Vector> delta = triple.delta;
  if (source == DeltaSource::implementing_vector)
    for (int i = 0; i < B.dim; ++i)
      delta[idx(i)] = (triple.pi[idx(i)] - B.counit[i] * Matrix::Identity(k, k)) * *triple.xi;

  KernelMap phi = KernelMap::zero(B.dim, k + 1);
  for (int i = 0; i < B.dim; ++i) {
    Matrix& m = phi.blocks[idx(i)];
    m(0, 0) = triple.gamma.at(i);
    if (k == 0) continue;
    // delta^dagger(a) = delta(a^*)^*
    const Vector s = B.star(B.basis(i)).coeffs;
    Vector delta_star = Vector::Zero(k);
    for (int j = 0; j < B.dim; ++j) delta_star += s[j] * delta[idx(j)];
    m.col(0).tail(k) = delta[idx(i)];
    m.row(0).tail(k) = delta_star.adjoint();
    m.bottomRightCorner(k, k) = triple.pi[idx(i)] - B.counit[i] * Matrix::Identity(k, k);
  }
  return phi;
}

KernelMap implemented_map(const BialgebraDescriptor& B, const std::vector<Matrix>& pi, const Vector& xi,
                          const std::optional<Matrix>& isometry) {
  const Eigen::Index big = xi.size();
  const Matrix iso = isometry ? *isometry : Matrix::Identity(big, big);
  if (iso.rows() != big) throw Error(ErrorCode::shape, "implemented_map: isometry rows != dim of xi");
  if (pi.size() != idx(B.dim)) throw Error(ErrorCode::shape, "implemented_map: need one pi block per basis element");
  Matrix w(big, 1 + iso.cols());
  w.col(0) = xi;
  w.rightCols(iso.cols()) = iso;
  KernelMap phi = KernelMap::zero(B.dim, static_cast<int>(1 + iso.cols()));
  for (int i = 0; i < B.dim; ++i) {
    if (pi[idx(i)].rows() != big || pi[idx(i)].cols() != big)
      throw Error(ErrorCode::shape, "implemented_map: pi block has wrong size");
    phi.blocks[idx(i)] = w.adjoint() * (pi[idx(i)] - B.counit[i] * Matrix::Identity(big, big)) * w;
  }
  return phi;
}

double verify_structure_relation(const BialgebraDescriptor& B, const KernelMap& phi, const Functional& chi) {
  const double chi_res = character_residual(B, chi);
  if (chi_res > kDefaultTol) throw Error(ErrorCode::not_character, "verify_structure_relation: chi is not a character", chi_res);
  const int n = phi.target_dim;
  Matrix dqs = Matrix::Identity(n, n);
  dqs(0, 0) = 0.0;
  double r = 0.0;
  for (int i = 0; i < B.dim; ++i) {
    const Element si = B.star(B.basis(i));
    const Matrix& pi_ = phi.blocks[idx(i)];
    for (int j = 0; j < B.dim; ++j) {
      const Matrix& pj = phi.blocks[idx(j)];
      const Matrix lhs = phi(B.multiply(si, B.basis(j)));
      const Matrix rhs = pi_.adjoint() * chi.at(j) + std::conj(chi.at(i)) * pj + pi_.adjoint() * dqs * pj;
      r = std::max(r, linalg::op_norm(lhs - rhs));
    }
  }
  return r;
}

ImplementingPair extract_implementing_pair(const BialgebraDescriptor& B, const KernelMap& phi) {
  const int k = phi.noise_dim();
  ImplementingPair out;
  for (int i = 0; i < B.dim; ++i) out.pi.push_back(phi.nu(i) + B.counit[i] * Matrix::Identity(k, k));
  Vector rhs(static_cast<Eigen::Index>(B.dim) * k);
  for (int i = 0; i < B.dim; ++i) rhs.segment(static_cast<Eigen::Index>(i) * k, k) = phi.delta(i);
  const Matrix nu = stacked_nu(B, out.pi, k);
  out.xi = k > 0 ? Vector(linalg::least_squares(nu, rhs)) : Vector(0);
  double res = k > 0 ? linalg::max_abs(nu * out.xi - rhs) : 0.0;
  for (int i = 0; i < B.dim; ++i) {
    const cplx model = k > 0 ? cplx(out.xi.dot(phi.nu(i) * out.xi)) : cplx(0.0);
    res = std::max(res, std::abs(phi.blocks[idx(i)](0, 0) - model));
  }
  out.residual = res;
  out.homomorphism = k > 0 ? homomorphism_residual(B, out.pi) : 0.0;
  return out;
}

const char* to_string(GeneratorClass c) noexcept {
  switch (c) {
    case GeneratorClass::star_homomorphic: return "star_homomorphic";
    case GeneratorClass::cp_preunital: return "cp_preunital";
    case GeneratorClass::cp_contractive: return "cp_contractive";
    case GeneratorClass::unclassified: return "unclassified";
  }
  return "unclassified";
}

Element counit_support(const BialgebraDescriptor& B) {
  const int d = B.dim;
  // Rows of block i: coefficients of (e_i - eps_i 1) p.
  Matrix sys(static_cast<Eigen::Index>(d) * d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) sys(static_cast<Eigen::Index>(i) * d + k, j) = B.mult[idx(k)](i, j) - (k == j ? B.counit[i] : cplx(0.0));
  const Matrix kernel = linalg::null_space(sys);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    const cplx e = (B.counit.array() * kernel.col(c).array()).sum();
    if (std::abs(e) > 1e-12) return Element{kernel.col(c) / e};
  }
  throw Error(ErrorCode::precondition, "counit has no support projection");
}

namespace {

KernelMap correction(const BialgebraDescriptor& B, int n, const Vector& zeta) {
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = 0.0;
  Vector e0 = Vector::Zero(n);
  e0[0] = 1.0;
  m += zeta * e0.adjoint() + e0 * zeta.adjoint();
  KernelMap c = KernelMap::zero(B.dim, n);
  for (int i = 0; i < B.dim; ++i) c.blocks[idx(i)] = B.counit[i] * m;
  return c;
}

// Golden-section maximization of a concave function on [lo, hi].
template <typename F>
double maximize_concave(F&& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Classification classify_generator(const BialgebraDescriptor& B, const KernelMap& phi, const Witness& witness,
                                  double tol) {
  Classification out;
  const int n = phi.target_dim;
  const Matrix phi_one = phi(B.one());
  out.phi_one_max_eig = max_eig(0.5 * (phi_one + phi_one.adjoint()));
  const bool phi_one_hermitian = linalg::max_abs(phi_one - phi_one.adjoint()) <= tol;
  out.preunital = linalg::max_abs(phi_one) <= tol;
  out.structure_residual = verify_structure_relation(B, phi, B.counit_functional());
  if (out.structure_residual <= tol) {
    out.kind = GeneratorClass::star_homomorphic;
    out.certificate = "epsilon-structure relation holds";
    return out;
  }

  if (const auto* w = std::get_if<PreunitalWitness>(&witness)) {
    const Eigen::Index big = w->xi.size();
    if (w->isometry.rows() != big || w->isometry.cols() != n - 1 || w->rho.size() != idx(B.dim))
      throw Error(ErrorCode::witness_shape, "classify: preunital witness has inconsistent shapes");
    for (const auto& r : w->rho)
      if (r.rows() != big || r.cols() != big) throw Error(ErrorCode::witness_shape, "classify: rho block has wrong size");
    const KernelMap model = implemented_map(B, w->rho, w->xi, w->isometry);
    const double iso = linalg::max_abs(w->isometry.adjoint() * w->isometry - Matrix::Identity(n - 1, n - 1));
    const double hom = homomorphism_residual(B, w->rho);
    Matrix rho_one = Matrix::Zero(big, big);
    for (int i = 0; i < B.dim; ++i) rho_one += B.unit[i] * w->rho[idx(i)];
    const double nondeg = linalg::max_abs(rho_one - Matrix::Identity(big, big));
    double res = 0.0;
    for (int i = 0; i < B.dim; ++i) res = std::max(res, linalg::max_abs(model.blocks[idx(i)] - phi.blocks[idx(i)]));
    out.decomposition_residual = std::max({res, iso, hom, nondeg});
    if (*out.decomposition_residual <= tol) {
      out.kind = GeneratorClass::cp_preunital;
      out.certificate = "phi = [<xi|;D*](rho - eps I)[|xi>,D] with D*D = I";
    }
    return out;
  }

  auto test_contractive = [&](const ContractiveWitness& w) {
    if (w.psi.target_dim != n || w.psi.blocks.size() != idx(B.dim) || w.zeta.size() != n)
      throw Error(ErrorCode::witness_shape, "classify: contractive witness has inconsistent shapes");
    const KernelMap model = w.psi - correction(B, n, w.zeta);
    double res = 0.0;
    for (int i = 0; i < B.dim; ++i) res = std::max(res, linalg::max_abs(model.blocks[idx(i)] - phi.blocks[idx(i)]));
    out.decomposition_residual = res;
    out.choi_min_eig = choi_min_eigenvalue(B, w.psi);
    return res <= tol && *out.choi_min_eig >= -tol && phi_one_hermitian && out.phi_one_max_eig <= tol;
  };

  if (const auto* w = std::get_if<ContractiveWitness>(&witness)) {
    if (test_contractive(*w)) {
      out.kind = GeneratorClass::cp_contractive;
      out.certificate = "phi = psi - eps(.)(Delta_QS + |zeta><e0| + |e0><zeta|), psi CP, phi(1) <= 0";
    }
    return out;
  }

  // Witness-free search: zeta = (s, zeta_k) with zeta_k cancelling the delta
  // block of phi at the counit support, s scanned for the best Choi margin.
  // Only Re s enters the decomposition, so the scan is one-dimensional.
  const Element p = counit_support(B);
  Vector zeta = Vector::Zero(n);
  zeta.tail(n - 1) = -phi(p).col(0).tail(n - 1);
  double span = 1.0 + zeta.squaredNorm();
  for (const auto& b : phi.blocks) span += linalg::op_norm(b);
  auto margin = [&](double s) {
    Vector z = zeta;
    z[0] = s;
    return choi_min_eigenvalue(B, phi + correction(B, n, z));
  };
  constexpr int kGrid = 41;
  double best_s = -span;
  double best = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < kGrid; ++g) {
    const double s = -span + 2.0 * span * g / (kGrid - 1);
    const double m = margin(s);
    if (m > best) {
      best = m;
      best_s = s;
    }
  }
  const double step = 2.0 * span / (kGrid - 1);
  best_s = maximize_concave(margin, best_s - step, best_s + step);
  zeta[0] = best_s;
  const ContractiveWitness found{phi + correction(B, n, zeta), zeta};
  if (test_contractive(found)) {
    out.kind = GeneratorClass::cp_contractive;
    out.found = found;
    out.certificate = "decomposition found by counit-support search";
  }
  return out;
}

}  // namespace qlevy
