#pragma once

// Finite-dimensional counital *-bialgebras given by structure constants.
//
// In finite dimension every C*-algebra is unital and every linear map is
// strict and normal, so the multiplier algebra, the strict extension and the
// enveloping von Neumann algebra all coincide with B itself. No separate
// types exist for them; `B` below plays all three roles.

#include <string>
#include <vector>

#include "qlevy/types.hpp"

namespace qlevy {

/// A vector of B in the descriptor's basis.
struct Element {
  Vector coeffs;

  Eigen::Index size() const { return coeffs.size(); }
};

/// A linear functional on B, stored by its values on the basis.
struct Functional {
  Vector coeffs;

  Eigen::Index size() const { return coeffs.size(); }
  cplx operator()(const Element& b) const { return (coeffs.array() * b.coeffs.array()).sum(); }
  cplx at(Eigen::Index i) const { return coeffs[i]; }
};

/// Group Cayley table: table[g][h] is the index of gh.
using GroupTable = std::vector<std::vector<int>>;

/// Structure constants of a *-bialgebra plus a faithful block representation.
///
/// Storage conventions:
///   mult[k](i, j)      coefficient of e_k in e_i e_j
///   invol(i, k)        (e_i)^* = sum_k invol(i, k) e_k, extended conjugate-linearly
///   coproduct[i](j, k) Delta(e_i) = sum_{j,k} coproduct[i](j, k) e_j (x) e_k
///   rep_blocks[b][i]   matrix of e_i in block b
///
/// Elements of B (x) B are d x d coefficient matrices.
struct BialgebraDescriptor {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Matrix> mult;
  Vector unit;
  Matrix invol;
  std::vector<Matrix> coproduct;
  Vector counit;
  std::vector<std::vector<Matrix>> rep_blocks;

  /// Throws Error{shape} when tensor dimensions disagree with `dim`.
  void check_shapes() const;

  Element basis(int i) const;
  Element one() const { return Element{unit}; }
  Element zero() const { return Element{Vector::Zero(dim)}; }
  Functional counit_functional() const { return Functional{counit}; }

  Element multiply(const Element& a, const Element& b) const;
  Element star(const Element& a) const;
  /// Coefficient matrix of Delta(a) in B (x) B.
  Matrix coproduct_of(const Element& a) const;
  cplx counit_of(const Element& a) const { return (counit.array() * a.coeffs.array()).sum(); }

  /// Product in B (x) B.
  Matrix multiply_tensor(const Matrix& x, const Matrix& y) const;
  Matrix star_tensor(const Matrix& x) const;

  /// Image of `a` in representation block `block`.
  Matrix represent(const Element& a, std::size_t block) const;
  /// Block-diagonal sum over all representation blocks.
  Matrix represent(const Element& a) const;
  int rep_dim() const;
};

struct Residual {
  std::string name;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<Residual> residuals;
  double tolerance = kDefaultTol;
  bool pass = false;

  double max_residual() const;
  /// Residual by name; throws std::out_of_range if absent.
  double operator[](const std::string& name) const;
};

/// Residual per axiom; pass iff all are within `tol`.
ValidationReport validate(const BialgebraDescriptor& B, double tol = kDefaultTol);

/// Throws Error{not_a_group} unless `table` is a group Cayley table.
/// Returns the identity index.
int check_group_table(const GroupTable& table);
std::vector<int> group_inverses(const GroupTable& table);

/// F(G): functions on a finite group, pointwise product, Delta(d_g) = sum_{hk=g} d_h (x) d_k.
BialgebraDescriptor function_algebra(const GroupTable& table);
/// C[G]: group algebra with grouplike coproduct and the left regular representation.
BialgebraDescriptor group_algebra(const GroupTable& table);

/// Cayley tables of a few small groups.
GroupTable cyclic_group(int n);
GroupTable symmetric_group_s3();

struct PositivityResult {
  bool positive = false;
  /// Smallest eigenvalue of the Hermitian part over all blocks.
  double margin = 0.0;
  double hermiticity = 0.0;
};

PositivityResult element_positive(const BialgebraDescriptor& B, const Element& a, double tol = 1e-12);

struct StateCheck {
  bool is_state = false;
  cplx value_at_unit;
  /// Smallest eigenvalue of G_ij = phi(e_i^* e_j).
  double gram_min_eig = 0.0;
  double hermiticity = 0.0;
};

/// Gram matrix G_ij = phi(e_i^* e_j).
Matrix functional_gram(const BialgebraDescriptor& B, const Functional& phi);

StateCheck functional_is_state(const BialgebraDescriptor& B, const Functional& phi,
                               double tol = kDefaultTol);

/// Max over the basis of |phi(e_i^*) - conj(phi(e_i))|.
double reality_residual(const BialgebraDescriptor& B, const Functional& phi);

/// Max residual of chi being a unital *-character.
double character_residual(const BialgebraDescriptor& B, const Functional& chi);

}  // namespace qlevy
