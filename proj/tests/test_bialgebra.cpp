#include <doctest.h>

#include <random>

#include "qlevy/bialgebra.hpp"
#include "qlevy/serialization.hpp"
#include "support.hpp"

using namespace qlevy;

namespace {

// Coassociativity and counitality recomputed from the raw tensors, with
// indices spelled out rather than going through the descriptor helpers.
double coassociativity_by_hand(const BialgebraDescriptor& B) {
  double worst = 0.0;
  const int d = B.dim;
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        for (int r = 0; r < d; ++r) {
          cplx l = 0.0, rr = 0.0;
          for (int m = 0; m < d; ++m) {
            l += B.coproduct[std::size_t(i)](m, r) * B.coproduct[std::size_t(m)](p, q);
            rr += B.coproduct[std::size_t(i)](p, m) * B.coproduct[std::size_t(m)](q, r);
          }
          worst = std::max(worst, std::abs(l - rr));
        }
  return worst;
}

double cocommutativity_defect(const BialgebraDescriptor& B) {
  double worst = 0.0;
  for (const auto& c : B.coproduct) worst = std::max(worst, linalg::max_abs(c - c.transpose()));
  return worst;
}

}  // namespace

TEST_CASE("F(Z/2) structure") {
  const auto B = function_algebra(cyclic_group(2));
  CHECK(B.dim == 2);
  // Delta(delta_1) = delta_0 (x) delta_1 + delta_1 (x) delta_0.
  CHECK(B.coproduct[1](0, 1) == cplx(1.0));
  CHECK(B.coproduct[1](1, 0) == cplx(1.0));
  CHECK(B.coproduct[1](0, 0) == cplx(0.0));
  CHECK(B.coproduct[1](1, 1) == cplx(0.0));
  const auto report = validate(B);
  CHECK(report.pass);
  CHECK(report.max_residual() <= 1e-14);
  CHECK(coassociativity_by_hand(B) == 0.0);
}

TEST_CASE("trivial group") {
  const auto B = function_algebra(GroupTable{{0}});
  CHECK(B.dim == 1);
  CHECK(B.coproduct[0](0, 0) == cplx(1.0));
  CHECK(B.counit[0] == cplx(1.0));
  CHECK(validate(B).pass);
}

TEST_CASE("evaluation at the non-identity element is not a counit") {
  auto B = function_algebra(cyclic_group(2));
  B.counit << 0.0, 1.0;
  const auto report = validate(B);
  CHECK_FALSE(report.pass);
  // (eps (x) id) Delta(delta_0) = delta_1 by hand.
  CHECK(report["counital_property"] > 0.5);
}

TEST_CASE("generated descriptors validate to 1e-12") {
  const std::vector<BialgebraDescriptor> all{
      function_algebra(cyclic_group(3)), function_algebra(symmetric_group_s3()), group_algebra(cyclic_group(2)),
      group_algebra(cyclic_group(3)),    group_algebra(cyclic_group(4)),        group_algebra(symmetric_group_s3())};
  for (const auto& B : all) {
    const auto report = validate(B, 1e-12);
    CHECK(report.pass);
    CHECK(coassociativity_by_hand(B) < 1e-14);
  }
}

TEST_CASE("F(G) is cocommutative iff G is abelian") {
  CHECK(cocommutativity_defect(function_algebra(cyclic_group(4))) == 0.0);
  CHECK(cocommutativity_defect(function_algebra(symmetric_group_s3())) > 0.5);
}

TEST_CASE("group algebra relations") {
  const auto B = group_algebra(cyclic_group(2));
  const Element u1 = B.basis(1);
  CHECK(linalg::max_abs(B.multiply(u1, u1).coeffs - B.basis(0).coeffs) == 0.0);
  CHECK(linalg::max_abs(B.coproduct_of(u1) - u1.coeffs * u1.coeffs.transpose()) == 0.0);

  const auto S = group_algebra(symmetric_group_s3());
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) CHECK(S.counit_of(S.multiply(S.basis(g), S.basis(h))) == cplx(1.0));
  CHECK(character_residual(S, S.counit_functional()) == 0.0);
}

TEST_CASE("counit is a *-character on every packaged algebra") {
  for (const auto& ex : qtest::packaged_examples()) {
    const auto& B = ex.algebra;
    for (int i = 0; i < B.dim; ++i) {
      CHECK(std::abs(B.counit_of(B.star(B.basis(i))) - std::conj(B.counit[i])) < 1e-15);
      for (int j = 0; j < B.dim; ++j)
        CHECK(std::abs(B.counit_of(B.multiply(B.basis(i), B.basis(j))) - B.counit[i] * B.counit[j]) < 1e-15);
    }
  }
}

TEST_CASE("not a group") {
  CHECK_THROWS_AS(function_algebra(GroupTable{{0, 1}, {0, 1}}), Error);
  try {
    group_algebra(GroupTable{{0, 1}, {1, 1}});
    FAIL("expected not_a_group");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_group);
  }
}

TEST_CASE("shape errors") {
  auto B = function_algebra(cyclic_group(2));
  B.mult.pop_back();
  CHECK_THROWS_AS(B.check_shapes(), Error);
}

TEST_CASE("element positivity") {
  const auto B = function_algebra(cyclic_group(2));
  const auto one = element_positive(B, B.one());
  CHECK(one.positive);
  CHECK(one.margin == doctest::Approx(1.0));
  const Element diff{B.basis(0).coeffs - B.basis(1).coeffs};
  CHECK_FALSE(element_positive(B, diff).positive);

  std::mt19937_64 rng(3);
  for (const auto& ex : qtest::packaged_examples()) {
    const Element b = qtest::random_element(rng, ex.algebra);
    const auto r = element_positive(ex.algebra, ex.algebra.multiply(ex.algebra.star(b), b));
    CHECK(r.positive);
    CHECK(r.margin >= -1e-12);
  }
}

TEST_CASE("states") {
  const auto B = function_algebra(cyclic_group(2));
  CHECK(functional_is_state(B, B.counit_functional()).is_state);
  CHECK(functional_is_state(B, qtest::functional({0.3, 0.7})).is_state);
  CHECK_FALSE(functional_is_state(B, Functional{2.0 * B.counit}).is_state);
  CHECK_FALSE(functional_is_state(B, qtest::functional({1.3, -0.3})).is_state);
}

TEST_CASE("representation is faithful") {
  for (const auto& ex : qtest::packaged_examples()) {
    const auto& B = ex.algebra;
    const int n = B.rep_dim();
    Matrix images(Eigen::Index(n) * n, B.dim);
    for (int i = 0; i < B.dim; ++i) {
      const Matrix r = B.represent(B.basis(i));
      images.col(i) = Eigen::Map<const Vector>(r.data(), r.size());
    }
    CHECK(linalg::numerical_rank(images) == B.dim);
  }
}

TEST_CASE("packaged descriptor files match the builders") {
  const std::vector<std::pair<std::string, BialgebraDescriptor>> files{
      {"algebras/f_z2.json", function_algebra(cyclic_group(2))},
      {"algebras/f_z3.json", function_algebra(cyclic_group(3))},
      {"algebras/f_s3.json", function_algebra(symmetric_group_s3())},
      {"algebras/c_z2.json", group_algebra(cyclic_group(2))},
      {"algebras/c_z4.json", group_algebra(cyclic_group(4))}};
  for (const auto& [file, built] : files) {
    const auto B = io::load_descriptor(qtest::data_path(file));
    REQUIRE(B.dim == built.dim);
    CHECK(B.labels == built.labels);
    for (int i = 0; i < B.dim; ++i) {
      CHECK(linalg::max_abs(B.mult[std::size_t(i)] - built.mult[std::size_t(i)]) == 0.0);
      CHECK(linalg::max_abs(B.coproduct[std::size_t(i)] - built.coproduct[std::size_t(i)]) == 0.0);
    }
    CHECK(linalg::max_abs(B.counit - built.counit) == 0.0);
    CHECK(linalg::max_abs(B.invol - built.invol) == 0.0);
  }
}
