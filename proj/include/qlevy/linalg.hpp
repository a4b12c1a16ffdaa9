#pragma once

// Small dense helpers shared by every module. All matrices here are tiny
// (dimension well under a hundred), so nothing is tuned for size.

#include <Eigen/Dense>

#include "qlevy/types.hpp"

namespace qlevy::linalg {

struct HermitianEigen {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns, first nonzero entry real positive
};

/// Eigendecomposition of the Hermitian part of `a`, ordered by descending
/// eigenvalue with a lexicographic tie-break on the (phase-fixed) vectors.
HermitianEigen hermitian_eigen(const Matrix& a);

/// Smallest eigenvalue of (a + a^*)/2; +inf for an empty matrix.
double min_hermitian_eigenvalue(const Matrix& a);

/// Spectral norm; 0 for an empty matrix.
double op_norm(const Matrix& a);

double max_abs(const Matrix& a);

/// Kronecker product, first factor on the more significant index.
Matrix kron(const Matrix& a, const Matrix& b);

/// Dense matrix exponential (scaling and squaring).
Matrix expm(const Matrix& a);

/// Orthonormal basis (columns) of the kernel of `a`, singular values below
/// rel_tol * sigma_max counted as zero.
Matrix null_space(const Matrix& a, double rel_tol = 1e-10);

int numerical_rank(const Matrix& a, double rel_tol = 1e-10);

/// Minimum-norm least-squares solution of a x = b.
Matrix least_squares(const Matrix& a, const Matrix& b);

/// Multiply by a unit phase so the first entry with modulus above `eps`
/// becomes real and positive. Returns the phase applied.
cplx fix_phase(Eigen::Ref<Vector> v, double eps = 1e-12);

}  // namespace qlevy::linalg
