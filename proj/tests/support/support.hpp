#pragma once

// Fixtures and independent oracles shared by the test binaries. The oracles
// deliberately avoid the library's own shortcuts: the ODE oracle integrates
// the convolution equation with RK4, and the tensor oracle expands iterated
// coproducts term by term.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"
#include "qlevy/linalg.hpp"
#include "qlevy/schurmann.hpp"
#include "qlevy/step_function.hpp"

namespace qtest {

using qlevy::BialgebraDescriptor;
using qlevy::cplx;
using qlevy::Element;
using qlevy::Functional;
using qlevy::KernelMap;
using qlevy::Matrix;
using qlevy::StepFunction;
using qlevy::Vector;

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(QLEVY_DATA_DIR) / rel; }

/// A packaged example: algebra plus generating functional.
struct Example {
  std::string name;
  BialgebraDescriptor algebra;
  Functional gamma;
};

inline Functional functional(std::initializer_list<cplx> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (cplx x : values) v[i++] = x;
  return Functional{v};
}

inline Example ex1() { return {"F(Z/2)", qlevy::function_algebra(qlevy::cyclic_group(2)), functional({-1.0, 1.0})}; }

inline std::vector<Example> packaged_examples() {
  return {
      ex1(),
      {"F(Z/3)", qlevy::function_algebra(qlevy::cyclic_group(3)), functional({-1.0, 1.0, 0.0})},
      {"F(S3)", qlevy::function_algebra(qlevy::symmetric_group_s3()), functional({-1.75, 1.0, 0.5, 0.0, 0.0, 0.25})},
      {"C[Z/2]", qlevy::group_algebra(qlevy::cyclic_group(2)), functional({0.0, -2.0})},
      {"C[Z/4]", qlevy::group_algebra(qlevy::cyclic_group(4)),
       functional({0.0, cplx(-2.0, 0.5), -3.0, cplx(-2.0, -0.5)})},
  };
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(u(rng), u(rng));
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(u(rng), u(rng));
  return m;
}

inline Functional random_functional(std::mt19937_64& rng, const BialgebraDescriptor& B, double scale = 1.0) {
  return Functional{random_vector(rng, B.dim, scale)};
}

inline Element random_element(std::mt19937_64& rng, const BialgebraDescriptor& B) {
  return Element{random_vector(rng, B.dim)};
}

/// Random generating functional gamma = <xi, (R(.) - eps) xi> on the
/// faithful representation, which is real, conditionally positive and
/// vanishes at 1.
inline Functional random_generator(std::mt19937_64& rng, const BialgebraDescriptor& B, double scale = 1.0) {
  const int n = B.rep_dim();
  const Vector xi = random_vector(rng, n, scale);
  Vector g(B.dim);
  for (int i = 0; i < B.dim; ++i) {
    const Matrix r = B.represent(B.basis(i));
    g[i] = xi.dot((r - B.counit[i] * Matrix::Identity(n, n)) * xi);
  }
  return Functional{g};
}

/// Random step function with `pieces` constancy intervals on [0, span).
inline StepFunction random_step(std::mt19937_64& rng, int k, double span, int pieces = 3) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<double> bps;
  while (static_cast<int>(bps.size()) < pieces - 1) {
    const double b = u(rng);
    bool far = b > 1e-3;
    for (double x : bps) far = far && std::abs(x - b) > 1e-3;
    if (far) bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<Vector> vals;
  for (int i = 0; i < pieces; ++i) vals.push_back(random_vector(rng, k, 0.7));
  return StepFunction(bps, vals);
}

/// Random step function with breakpoints on the dyadic grid j / 2^level.
inline StepFunction random_dyadic_step(std::mt19937_64& rng, int k, int level, int pieces, double scale = 0.7) {
  std::uniform_int_distribution<int> pick(1, (1 << level) - 1);
  std::vector<double> bps;
  while (static_cast<int>(bps.size()) < pieces - 1) {
    const double b = std::ldexp(static_cast<double>(pick(rng)), -level);
    if (std::find(bps.begin(), bps.end(), b) == bps.end()) bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<Vector> vals;
  for (int i = 0; i < pieces; ++i) vals.push_back(random_vector(rng, k, scale));
  return StepFunction(bps, vals);
}

/// (a * b)(e_i) by explicit summation over the coproduct coefficients.
inline Functional convolve_by_hand(const BialgebraDescriptor& B, const Functional& a, const Functional& b) {
  Vector out = Vector::Zero(B.dim);
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int k = 0; k < B.dim; ++k) out[i] += B.coproduct[static_cast<std::size_t>(i)](j, k) * a.at(j) * b.at(k);
  return Functional{out};
}

/// Classical RK4 for y' = F(s, y) on functionals, with `steps` uniform steps.
inline Functional rk4(const std::function<Functional(double, const Functional&)>& rhs, Functional y, double a,
                      double b, int steps) {
  const double h = (b - a) / steps;
  const auto axpy = [](const Functional& x, double s, const Functional& k) { return Functional{x.coeffs + s * k.coeffs}; };
  for (int n = 0; n < steps; ++n) {
    const double s = a + n * h;
    const Functional k1 = rhs(s, y);
    const Functional k2 = rhs(s + h / 2, axpy(y, h / 2, k1));
    const Functional k3 = rhs(s + h / 2, axpy(y, h / 2, k2));
    const Functional k4 = rhs(s + h, axpy(y, h, k3));
    y.coeffs += h / 6 * (k1.coeffs + 2.0 * k2.coeffs + 2.0 * k3.coeffs + k4.coeffs);
  }
  return y;
}

/// <(1,c), phi(.) (1,d)> written out from the blocks.
inline Functional component_by_hand(const KernelMap& phi, const Vector& c, const Vector& d) {
  Vector out(phi.algebra_dim());
  const int k = phi.noise_dim();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const Matrix& m = phi.blocks[static_cast<std::size_t>(i)];
    cplx v = m(0, 0);
    for (int a = 0; a < k; ++a) {
      v += std::conj(c[a]) * m(1 + a, 0) + m(0, 1 + a) * d[a];
      for (int b = 0; b < k; ++b) v += std::conj(c[a]) * m(1 + a, 1 + b) * d[b];
    }
    out[i] = v;
  }
  return Functional{out};
}

/// Solves d/ds lambda = lambda * phi_{f(s), g(s)} from eta with RK4, using
/// `per_unit` steps per unit time inside each constancy interval.
inline Functional ode_oracle(const BialgebraDescriptor& B, const KernelMap& phi, const Functional& eta,
                             const StepFunction& f, const StepFunction& g, double t, int per_unit = 2000) {
  std::vector<double> cuts{0.0};
  for (double x : qlevy::merged_breakpoints(f, g, 0.0, t)) cuts.push_back(x);
  cuts.push_back(t);
  Functional y = eta;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Functional gen = component_by_hand(phi, f.value_at(cuts[i]), g.value_at(cuts[i]));
    const auto rhs = [&](double, const Functional& x) { return convolve_by_hand(B, x, gen); };
    const int steps = std::max(8, static_cast<int>(std::ceil((cuts[i + 1] - cuts[i]) * per_unit)));
    y = rk4(rhs, y, cuts[i], cuts[i + 1], steps);
  }
  return y;
}

/// Coefficients of the n-fold iterated coproduct of e_i as a flat array over
/// multi-indices (j_1, ..., j_n), j_1 most significant.
inline std::vector<cplx> iterated_coproduct(const BialgebraDescriptor& B, int i, int n) {
  std::vector<cplx> cur(static_cast<std::size_t>(B.dim), 0.0);
  cur[static_cast<std::size_t>(i)] = 1.0;
  for (int level = 1; level < n; ++level) {
    std::vector<cplx> next(cur.size() * static_cast<std::size_t>(B.dim), 0.0);
    // Split the last leg.
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      if (cur[idx] == cplx(0.0)) continue;
      const std::size_t head = idx / static_cast<std::size_t>(B.dim);
      const int last = static_cast<int>(idx % static_cast<std::size_t>(B.dim));
      const Matrix& c = B.coproduct[static_cast<std::size_t>(last)];
      for (int a = 0; a < B.dim; ++a)
        for (int b = 0; b < B.dim; ++b)
          if (c(a, b) != cplx(0.0))
            next[(head * static_cast<std::size_t>(B.dim) + static_cast<std::size_t>(a)) * static_cast<std::size_t>(B.dim) +
                 static_cast<std::size_t>(b)] += cur[idx] * c(a, b);
    }
    cur = std::move(next);
  }
  return cur;
}

/// psi_n(e_i) on khat^{(x) n}, summed term by term over the iterated coproduct.
inline Matrix brute_force_power(const BialgebraDescriptor& B, const KernelMap& psi, int i, int n) {
  if (n == 0) return Matrix::Constant(1, 1, B.counit[i]);
  const std::vector<cplx> coeffs = iterated_coproduct(B, i, n);
  Eigen::Index dim = 1;
  for (int r = 0; r < n; ++r) dim *= psi.target_dim;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == cplx(0.0)) continue;
    std::size_t rest = idx;
    std::vector<int> legs(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
      legs[static_cast<std::size_t>(r)] = static_cast<int>(rest % static_cast<std::size_t>(B.dim));
      rest /= static_cast<std::size_t>(B.dim);
    }
    Matrix term = Matrix::Identity(1, 1);
    for (int leg : legs) term = qlevy::linalg::kron(term, psi.blocks[static_cast<std::size_t>(leg)]);
    out += coeffs[idx] * term;
  }
  return out;
}

inline Vector kron_vectors(const std::vector<Vector>& parts) {
  Matrix acc = Matrix::Identity(1, 1);
  for (const auto& p : parts) acc = qlevy::linalg::kron(acc, Matrix(p));
  return acc.col(0);
}

}  // namespace qtest
