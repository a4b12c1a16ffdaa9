#include <doctest.h>

#include <cmath>
#include <random>

#include "qlevy/cocycle.hpp"
#include "qlevy/schurmann.hpp"
#include "support.hpp"

using namespace qlevy;

namespace {

CocycleSpec spec_for(const qtest::Example& ex) {
  return CocycleSpec::make(ex.algebra, assemble_structure_map(ex.algebra, gns_triple(ex.algebra, ex.gamma)));
}

Vector scalar(cplx x) { return Vector::Constant(1, x); }

StepFunction one_break(double at, cplx before, cplx after) { return StepFunction({at}, {scalar(before), scalar(after)}); }

}  // namespace

TEST_CASE("step functions") {
  const StepFunction f = one_break(0.5, 1.0, 2.0);
  CHECK(f.value_at(0.0)[0] == cplx(1.0));
  CHECK(f.value_at(0.5)[0] == cplx(2.0));
  CHECK(f.value_at(0.4999)[0] == cplx(1.0));
  CHECK(f.shifted(0.25).breakpoints().at(0) == doctest::Approx(0.25));
  CHECK(f.shifted(0.75).breakpoints().empty());
  CHECK(f.shifted(0.75).value_at(0.0)[0] == cplx(2.0));
  CHECK(std::abs(f.average(0.25, 0.75)[0] - 1.5) < 1e-15);
  CHECK(std::abs(inner_product(f, f, 0.0, 1.0) - 2.5) < 1e-15);
  const StepFunction g = one_break(0.25, cplx(0.0, 1.0), 0.0);
  // conjugate-linear in the first slot
  CHECK(std::abs(inner_product(g, f, 0.0, 1.0) - cplx(0.0, -0.25)) < 1e-15);

  CHECK_THROWS_AS(StepFunction({0.5, 0.2}, {scalar(0), scalar(0), scalar(0)}), Error);
  CHECK_THROWS_AS(StepFunction({0.5}, {scalar(0)}), Error);
  CHECK_THROWS_AS(StepFunction({-0.5}, {scalar(0), scalar(0)}), Error);
}

TEST_CASE("merged breakpoints") {
  const StepFunction f({1.0 / 3.0}, {scalar(0), scalar(1)}, {Rational{1, 3}});
  const StepFunction g({2.0 / 6.0}, {scalar(0), scalar(1)}, {Rational{2, 6}});
  CHECK(merged_breakpoints(f, g, 0.0, 1.0).size() == 1);
  const StepFunction h({0.3 + 5e-13}, {scalar(0), scalar(1)});
  const StepFunction k({0.3}, {scalar(0), scalar(1)});
  CHECK(merged_breakpoints(h, k, 0.0, 1.0).size() == 1);
  CHECK(merged_breakpoints(h, k, 0.0, 0.2).empty());
  CHECK(merged_breakpoints(f, k, 0.0, 1.0).size() == 2);
}

TEST_CASE("phi components") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const Vector zero = Vector::Zero(1);
  CHECK(distance(phi_component(spec.phi, zero, zero), spec.phi.gamma()) == 0.0);
  CHECK(std::abs(phi_component(spec.phi, scalar(1.0), scalar(1.0)).at(1) - 4.0) < 1e-12);

  std::mt19937_64 rng(31);
  const Vector c = qtest::random_vector(rng, 1), d = qtest::random_vector(rng, 1);
  const cplx s(0.3, -1.2);
  const Functional base = phi_component(spec.phi, c, d);
  CHECK(distance(phi_component(spec.phi, c, d), qtest::component_by_hand(spec.phi, c, d)) < 1e-15);
  // Conjugate-linear in c, linear in d, on the parts that carry them.
  const Functional g0 = phi_component(spec.phi, zero, zero);
  const Functional sc = phi_component(spec.phi, s * c, zero);
  const Functional c1 = phi_component(spec.phi, c, zero);
  CHECK(distance(Functional{sc.coeffs - g0.coeffs}, Functional{std::conj(s) * (c1.coeffs - g0.coeffs)}) < 1e-14);
  const Functional sd = phi_component(spec.phi, zero, s * d);
  const Functional d1 = phi_component(spec.phi, zero, d);
  CHECK(distance(Functional{sd.coeffs - g0.coeffs}, Functional{s * (d1.coeffs - g0.coeffs)}) < 1e-14);
  (void)base;
}

TEST_CASE("associated semigroups") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const Vector zero = Vector::Zero(1);
  CHECK(distance(associated_semigroup(spec, zero, zero, 0.0), ex.algebra.counit_functional()) == 0.0);
  for (double t : {0.2, 1.0, 1.7})
    CHECK(std::abs(associated_semigroup(spec, zero, zero, t).at(1) - 0.5 * (1.0 - std::exp(-2.0 * t))) < 1e-12);
  const Vector c = scalar(cplx(0.4, 0.1)), d = scalar(-0.7);
  const Functional lhs =
      convolve(ex.algebra, associated_semigroup(spec, c, d, 0.3), associated_semigroup(spec, c, d, 0.7));
  CHECK(distance(lhs, associated_semigroup(spec, c, d, 1.0)) <= 1e-10);
  CHECK_THROWS_AS(associated_semigroup(spec, c, d, -0.1), Error);
}

TEST_CASE("form solution against an ODE integrator") {
  std::mt19937_64 rng(32);
  for (const auto& ex : qtest::packaged_examples()) {
    const auto spec = spec_for(ex);
    const int k = spec.phi.noise_dim();
    const double t = 1.2;
    std::vector<Vector> fv{qtest::random_vector(rng, k, 0.7), qtest::random_vector(rng, k, 0.7)};
    const StepFunction f({t / 2}, fv);
    const StepFunction g = StepFunction::constant(qtest::random_vector(rng, k, 0.7));
    const Functional exact = form_solution(spec, f, g, t);
    const Functional oracle = qtest::ode_oracle(spec.algebra, spec.phi, spec.eta, f, g, t);
    CHECK(distance(exact, oracle) < 1e-8);
  }
}

TEST_CASE("form solution basics") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const StepFunction zero = StepFunction::zero(1);
  CHECK(distance(form_solution(spec, zero, zero, 0.8), conv_exp(ex.algebra, ex.gamma, 0.8)) < 1e-13);
  const StepFunction f = one_break(0.3, 0.5, -0.5);
  CHECK(distance(form_solution(spec, f, f, 0.0), spec.eta) == 0.0);
  CHECK_THROWS_AS(form_solution(spec, f, f, -1.0), Error);
  CHECK_THROWS_AS(form_solution(spec, StepFunction::zero(2), f, 1.0), Error);
}

TEST_CASE("refinement invariance") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.05, 1.45);
  for (const auto& ex : qtest::packaged_examples()) {
    const auto spec = spec_for(ex);
    const int k = spec.phi.noise_dim();
    for (int trial = 0; trial < 20; ++trial) {
      const StepFunction f = qtest::random_step(rng, k, 1.5, 3);
      const StepFunction g = qtest::random_step(rng, k, 1.5, 2);
      const double extra = u(rng);
      // Same function with a spurious breakpoint at `extra`.
      std::vector<double> bps = f.breakpoints();
      std::vector<Vector> vals = f.values();
      const auto pos = std::upper_bound(bps.begin(), bps.end(), extra) - bps.begin();
      bps.insert(bps.begin() + pos, extra);
      vals.insert(vals.begin() + pos, vals[std::size_t(pos)]);
      const StepFunction fr(bps, vals);
      CHECK(distance(form_solution(spec, f, g, 1.6), form_solution(spec, fr, g, 1.6)) <= 1e-11);
    }
  }
}

TEST_CASE("cocycle matrix elements") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const StepFunction zero = StepFunction::zero(1);
  CHECK(std::abs(cocycle_matrix_element(spec, zero, zero, 1.0, ex.algebra.basis(1)) - 0.5 * (1.0 - std::exp(-2.0))) <
        1e-12);

  // b = 1, f = g: the full exponential-vector inner product.
  const StepFunction f = one_break(0.5, cplx(0.3, 0.2), -0.4);
  const double tmax = 2.0;
  const cplx expected = std::exp(inner_product(f, f, 0.0, tmax));
  CHECK(std::abs(cocycle_matrix_element(spec, f, f, 1.0, ex.algebra.one(), tmax) - expected) < 1e-12);

  CHECK_THROWS_AS(cocycle_matrix_element(spec, f, f, 3.0, ex.algebra.one(), tmax), Error);
  try {
    cocycle_matrix_element(spec, f, f, 1.0, ex.algebra.one(), std::numeric_limits<double>::infinity());
    FAIL("expected unbounded_support");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unbounded_support);
  }
  const StepFunction compact = one_break(0.5, 1.0, 0.0);
  CHECK_NOTHROW(cocycle_matrix_element(spec, compact, compact, 1.0, ex.algebra.one(),
                                       std::numeric_limits<double>::infinity()));
}

TEST_CASE("conjugate symmetry of matrix elements") {
  std::mt19937_64 rng(34);
  for (const auto& ex : qtest::packaged_examples()) {
    const auto spec = spec_for(ex);
    const int k = spec.phi.noise_dim();
    CHECK(hermiticity_residual(ex.algebra, spec.phi) < 1e-12);
    for (int trial = 0; trial < 5; ++trial) {
      const StepFunction f = qtest::random_step(rng, k, 1.0), g = qtest::random_step(rng, k, 1.0);
      const Element b = qtest::random_element(rng, ex.algebra);
      const cplx lhs = cocycle_matrix_element(spec, f, g, 0.9, b);
      const cplx rhs = std::conj(cocycle_matrix_element(spec, g, f, 0.9, ex.algebra.star(b)));
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }
  }
}

TEST_CASE("cocycle identity") {
  std::mt19937_64 rng(35);
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const StepFunction f = qtest::random_step(rng, 1, 1.0, 4), g = qtest::random_step(rng, 1, 1.0, 3);
  CHECK(verify_cocycle_identity(spec, f, g, 0.0, 0.8) == 0.0);
  CHECK(verify_cocycle_identity(spec, f, g, 0.4, 0.6) <= 1e-10);

  // eta = Markov state at time 1 is not the convolution unit.
  const auto bad = CocycleSpec::make(spec.algebra, spec.phi, conv_exp(ex.algebra, ex.gamma, 1.0));
  CHECK(verify_cocycle_identity(bad, f, g, 0.4, 0.6) > 1e-3);
}

TEST_CASE("integral equation") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const StepFunction zero = StepFunction::zero(1);

  const auto r = verify_integral_equation(spec, zero, zero, 0.5, ex.algebra.basis(1));
  CHECK(std::abs(r.derivative - std::exp(-1.0)) < 1e-8);
  CHECK(r.residual < 1e-8);

  const auto flat = CocycleSpec::make(ex.algebra, KernelMap::zero(2, 2));
  const auto r0 = verify_integral_equation(flat, zero, zero, 0.5, ex.algebra.basis(1));
  CHECK(std::abs(r0.derivative) < 1e-12);
  CHECK(std::abs(r0.rhs) == 0.0);

  const StepFunction f = one_break(0.5, 1.0, 2.0);
  try {
    verify_integral_equation(spec, f, zero, 0.50005, ex.algebra.basis(1));
    FAIL("expected breakpoint_collision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::breakpoint_collision);
  }
}

TEST_CASE("integral equation residual is second order in the step") {
  std::mt19937_64 rng(36);
  const qtest::Example s3{"F(S3)", function_algebra(symmetric_group_s3()), Functional{}};
  qtest::Example ex = s3;
  ex.gamma = qtest::random_generator(rng, ex.algebra, 0.8);
  const auto spec = spec_for(ex);
  const int k = spec.phi.noise_dim();
  const StepFunction f({0.3}, {qtest::random_vector(rng, k), qtest::random_vector(rng, k)});
  const StepFunction g = StepFunction::constant(qtest::random_vector(rng, k));
  const Element b = qtest::random_element(rng, ex.algebra);
  const auto coarse = verify_integral_equation(spec, f, g, 0.7, b, 1e-3);
  const auto fine = verify_integral_equation(spec, f, g, 0.7, b, 1e-4);
  CHECK(fine.residual < coarse.residual);
  CHECK(std::log10(coarse.residual / fine.residual) >= 1.8);
}

TEST_CASE("Markov regularity") {
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);
  const Vector zero = Vector::Zero(1);
  const auto gap = [&](double t) {
    return distance(associated_semigroup(spec, zero, zero, t), ex.algebra.counit_functional());
  };
  CHECK(gap(1e-6) / 1e-6 == doctest::Approx(linalg::max_abs(ex.gamma.coeffs)).epsilon(1e-5));
  CHECK(gap(1e-4) < gap(1e-3));
}

TEST_CASE("complete positivity witnesses") {
  std::mt19937_64 rng(37);
  const auto ex = qtest::ex1();
  const auto spec = spec_for(ex);

  const StepFunction f = one_break(0.5, 0.5, 0.25);
  const double m = cp_gram_witness(spec, 1.0, {f}, {ex.algebra.one()});
  CHECK(m == doctest::Approx(std::exp(inner_product(f, f, 0.0, default_horizon(f, f))).real()).epsilon(1e-12));

  std::vector<StepFunction> fs;
  std::vector<Element> as;
  for (int i = 0; i < 3; ++i) {
    fs.push_back(qtest::random_step(rng, 1, 1.5));
    as.push_back(qtest::random_element(rng, ex.algebra));
  }
  CHECK(cp_gram_witness(spec, 1.0, fs, as) >= -1e-10);

  // Basis elements against a single f: PSD, and the cocycle is unital.
  std::vector<StepFunction> same(std::size_t(ex.algebra.dim), f);
  std::vector<Element> basis;
  for (int i = 0; i < ex.algebra.dim; ++i) basis.push_back(ex.algebra.basis(i));
  CHECK(cp_gram_witness(spec, 1.0, same, basis) >= -1e-9);
  CHECK(std::abs(form_solution(spec, f, f, 1.0)(ex.algebra.one()) - 1.0) < 1e-9);

  CHECK_THROWS_AS(cp_gram_witness(spec, 1.0, fs, {ex.algebra.one()}), Error);
}

TEST_CASE("a generator that is not conditionally positive has a violating witness") {
  const auto B = function_algebra(cyclic_group(2));
  KernelMap phi = KernelMap::zero(2, 1);
  phi.blocks[0](0, 0) = 1.0;
  phi.blocks[1](0, 0) = -1.0;
  const auto spec = CocycleSpec::make(B, phi);
  const StepFunction zero = StepFunction::zero(0);
  const double m = cp_gram_witness(spec, 1.0, {zero, zero}, {B.basis(0), B.basis(1)});
  CHECK(m < -0.01);
}

TEST_CASE("a positive multiple of the counit still drives a completely positive cocycle") {
  std::mt19937_64 rng(38);
  const auto B = function_algebra(cyclic_group(2));
  const auto spec = CocycleSpec::make(B, KernelMap::scalar(B.counit_functional(), 2));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<StepFunction> fs;
    std::vector<Element> as;
    for (int i = 0; i < 3; ++i) {
      fs.push_back(qtest::random_step(rng, 1, 1.0));
      as.push_back(qtest::random_element(rng, B));
    }
    CHECK(cp_gram_witness(spec, 1.0, fs, as) >= -1e-9);
  }
}
