#pragma once

// Generating functionals, their Schurmann triples, and epsilon-structure maps.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"

namespace qlevy {

struct GeneratingReport {
  double reality = 0.0;
  /// Smallest eigenvalue of [gamma(v_a^* v_b)] over an orthonormal basis of Ker eps.
  double conditional_positivity = 0.0;
  cplx value_at_unit;
  double tolerance = kDefaultTol;
  bool pass = false;
};

GeneratingReport check_generating(const BialgebraDescriptor& B, const Functional& gamma,
                                  double tol = kDefaultTol);

/// q(a, b) = gamma(a^* b) - conj(gamma(a)) eps(b) - conj(eps(a)) gamma(b) on basis pairs.
Matrix schurmann_gram(const BialgebraDescriptor& B, const Functional& gamma);

struct SchurmannTriple {
  int noise_dim = 0;
  std::vector<Matrix> pi;     // k x k per basis element
  std::vector<Vector> delta;  // k-vector per basis element
  Functional gamma;
  std::optional<Vector> xi;
  Matrix gram;
};

/// GNS-style construction from a generating functional. Directions of the
/// Gram matrix with eigenvalue <= tol * lambda_max are quotiented out.
/// Throws Error{precondition} if gamma fails check_generating and
/// Error{inconsistent_pi} if pi(a) d(b) = d(ab) - eps(b) d(a) has no solution.
SchurmannTriple gns_triple(const BialgebraDescriptor& B, const Functional& gamma, double tol = 1e-10);

/// Max residual of pi being multiplicative and *-preserving on the basis.
double homomorphism_residual(const BialgebraDescriptor& B, const std::vector<Matrix>& pi);

enum class DeltaSource { raw, implementing_vector };

/// [[gamma, delta^dagger], [delta, pi - eps I]].
KernelMap assemble_structure_map(const BialgebraDescriptor& B, const SchurmannTriple& triple,
                                 DeltaSource source = DeltaSource::raw);

/// [<xi|; D^*] (pi - eps I)(.) [|xi>, D]; D = identity when omitted.
KernelMap implemented_map(const BialgebraDescriptor& B, const std::vector<Matrix>& pi, const Vector& xi,
                          const std::optional<Matrix>& isometry = std::nullopt);

/// Max over basis pairs of the chi-structure relation defect. Throws
/// Error{not_character} unless chi is a *-character.
double verify_structure_relation(const BialgebraDescriptor& B, const KernelMap& phi, const Functional& chi);

struct ImplementingPair {
  std::vector<Matrix> pi;
  Vector xi;
  /// Covers nu(e_i) xi = delta(e_i) and gamma = <xi, nu(.) xi>.
  double residual = 0.0;
  double homomorphism = 0.0;
};

ImplementingPair extract_implementing_pair(const BialgebraDescriptor& B, const KernelMap& phi);

enum class GeneratorClass { star_homomorphic, cp_preunital, cp_contractive, unclassified };

const char* to_string(GeneratorClass c) noexcept;

/// phi = psi - eps(.)(Delta_QS + |zeta><e0| + |e0><zeta|), psi completely positive.
struct ContractiveWitness {
  KernelMap psi;
  Vector zeta;
};

/// phi = [<xi|; D^*](rho - eps I)(.)[|xi>, D], rho a nondegenerate representation, D an isometry.
struct PreunitalWitness {
  std::vector<Matrix> rho;
  Matrix isometry;
  Vector xi;
};

using Witness = std::variant<std::monostate, ContractiveWitness, PreunitalWitness>;

struct Classification {
  GeneratorClass kind = GeneratorClass::unclassified;
  double structure_residual = 0.0;
  /// Residual of the witnessed decomposition, when one was tested.
  std::optional<double> decomposition_residual;
  std::optional<double> choi_min_eig;
  /// Largest eigenvalue of the Hermitian part of phi(1).
  double phi_one_max_eig = 0.0;
  bool preunital = false;
  std::optional<ContractiveWitness> found;
  std::string certificate;
};

Classification classify_generator(const BialgebraDescriptor& B, const KernelMap& phi,
                                  const Witness& witness = {}, double tol = 1e-8);

/// The central support projection p of eps: a p = eps(a) p, eps(p) = 1.
Element counit_support(const BialgebraDescriptor& B);

}  // namespace qlevy
