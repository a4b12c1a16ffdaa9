#pragma once

// The convolution algebra (B*, *) and its action on maps into matrix
// algebras, together with the R-map phi -> (id (x) phi) Delta and its
// counit slice.

#include <cstddef>
#include <vector>

#include "qlevy/bialgebra.hpp"

namespace qlevy {

/// A linear map B -> M_n(C), n = 1 + dim k, stored by its value on each basis
/// element. Block views follow the split C (+) k: gamma is the (0,0) entry,
/// delta the lower-left column, delta_dagger the upper-right row and nu the
/// lower-right k x k block.
struct KernelMap {
  int target_dim = 1;
  std::vector<Matrix> blocks;

  static KernelMap zero(int dim, int target_dim);
  /// b -> chi(b) * I_n.
  static KernelMap scalar(const Functional& chi, int target_dim);

  int noise_dim() const { return target_dim - 1; }
  Eigen::Index algebra_dim() const { return static_cast<Eigen::Index>(blocks.size()); }

  Matrix operator()(const Element& b) const;

  Functional gamma() const;
  Vector delta(int i) const { return blocks[static_cast<std::size_t>(i)].col(0).tail(noise_dim()); }
  Eigen::RowVectorXcd delta_dagger(int i) const {
    return blocks[static_cast<std::size_t>(i)].row(0).tail(noise_dim());
  }
  Matrix nu(int i) const {
    return blocks[static_cast<std::size_t>(i)].bottomRightCorner(noise_dim(), noise_dim());
  }

  KernelMap& operator+=(const KernelMap& other);
  KernelMap& operator*=(cplx s);
};

KernelMap operator+(KernelMap a, const KernelMap& b);
KernelMap operator-(KernelMap a, const KernelMap& b);
KernelMap operator*(cplx s, KernelMap a);

/// Max over the basis of ||phi(e_i^*) - phi(e_i)^*||.
double hermiticity_residual(const BialgebraDescriptor& B, const KernelMap& phi);

/// Choi matrix [phi(e_i^* e_j)]_{ij}; PSD iff phi is completely positive.
Matrix choi_matrix(const BialgebraDescriptor& B, const KernelMap& phi);
double choi_min_eigenvalue(const BialgebraDescriptor& B, const KernelMap& phi);

/// ||phi||_cb = ||phi(1)|| for completely positive phi; negative when the
/// Choi matrix is not PSD within `tol`, since no closed form applies then.
double cp_cb_norm(const BialgebraDescriptor& B, const KernelMap& phi, double tol = kDefaultTol);

/// A map B -> B (x) M_n(C): parts[i][j] is the M_n coefficient of e_j in the
/// image of e_i.
struct LiftedMap {
  int target_dim = 1;
  std::vector<std::vector<Matrix>> parts;
};

Functional convolve(const BialgebraDescriptor& B, const Functional& a, const Functional& b);

inline constexpr double kDefaultKernelBudget = 1 << 22;

/// (Phi1 * Phi2)(e_i) = sum Delta_i(j,k) Phi1(e_j) (x) Phi2(e_k); the first
/// map occupies the more significant tensor leg. Throws Error{budget} when
/// (n1 n2)^2 d exceeds `budget`.
KernelMap convolve_kernel(const BialgebraDescriptor& B, const KernelMap& a, const KernelMap& b,
                          double budget = kDefaultKernelBudget);

/// Matrix of (id (x) phi) Delta in the basis (columns are images of e_i).
Matrix r_matrix(const BialgebraDescriptor& B, const Functional& phi);

/// (id (x) Phi) Delta.
LiftedMap r_lift(const BialgebraDescriptor& B, const KernelMap& phi);

/// (eps (x) id): left inverse of r_lift.
KernelMap e_slice(const BialgebraDescriptor& B, const LiftedMap& psi);

enum class ExpAlgorithm { series, rmap };

/// Terms kept by the series route for a generator of dual norm `norm`:
/// smallest N with norm^{N+1}/(N+1)! * e^norm <= 1e-12.
int series_truncation(double norm);

/// exp_*(t gamma), the convolution semigroup generated by gamma, at time t.
Functional conv_exp(const BialgebraDescriptor& B, const Functional& gamma, double t,
                    ExpAlgorithm algorithm = ExpAlgorithm::rmap);

/// Max-abs difference of coefficients.
double distance(const Functional& a, const Functional& b);

}  // namespace qlevy
