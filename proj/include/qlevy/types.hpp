#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlevy {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default residual tolerance for axiom checks.
inline constexpr double kDefaultTol = 1e-9;

enum class ErrorCode {
  parse,
  shape,
  io,
  precondition,
  not_a_group,
  not_character,
  inconsistent_pi,
  step_too_large,
  not_isometry,
  not_homomorphism,
  unbounded_support,
  horizon,
  breakpoint_collision,
  budget,
  witness_shape,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), code_(code), residual_(residual) {}

  ErrorCode code() const noexcept { return code_; }
  /// Offending residual, when the failure was numerical.
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  double residual_;
};

}  // namespace qlevy
