#include "qlevy/bialgebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qlevy/linalg.hpp"

namespace qlevy {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::shape, what);
}

}  // namespace

void BialgebraDescriptor::check_shapes() const {
  const auto d = static_cast<Eigen::Index>(dim);
  require(dim > 0, "dim must be positive");
  require(labels.empty() || labels.size() == static_cast<std::size_t>(dim), "labels length != dim");
  require(mult.size() == static_cast<std::size_t>(dim), "mult must have dim slices");
  for (const auto& m : mult) require(m.rows() == d && m.cols() == d, "mult slice must be dim x dim");
  require(unit.size() == d, "unit length != dim");
  require(invol.rows() == d && invol.cols() == d, "invol must be dim x dim");
  require(coproduct.size() == static_cast<std::size_t>(dim), "coproduct must have dim slices");
  for (const auto& c : coproduct) require(c.rows() == d && c.cols() == d, "coproduct slice must be dim x dim");
  require(counit.size() == d, "counit length != dim");
  require(!rep_blocks.empty(), "rep_blocks must be nonempty");
  for (const auto& block : rep_blocks) {
    require(block.size() == static_cast<std::size_t>(dim), "each rep block needs dim matrices");
    const Eigen::Index n = block.front().rows();
    for (const auto& m : block) require(m.rows() == n && m.cols() == n, "rep block matrices must be square and equal-sized");
  }
}

Element BialgebraDescriptor::basis(int i) const {
  Vector v = Vector::Zero(dim);
  v[i] = 1.0;
  return Element{v};
}

Element BialgebraDescriptor::multiply(const Element& a, const Element& b) const {
  Vector c(dim);
  const Vector ta = a.coeffs;
  for (int k = 0; k < dim; ++k) c[k] = ta.transpose() * mult[static_cast<std::size_t>(k)] * b.coeffs;
  return Element{c};
}

Element BialgebraDescriptor::star(const Element& a) const {
  return Element{invol.transpose() * a.coeffs.conjugate()};
}

Matrix BialgebraDescriptor::coproduct_of(const Element& a) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    if (a.coeffs[i] != cplx(0.0)) out += a.coeffs[i] * coproduct[static_cast<std::size_t>(i)];
  return out;
}

Matrix BialgebraDescriptor::multiply_tensor(const Matrix& x, const Matrix& y) const {
  Matrix out(dim, dim);
  for (int q = 0; q < dim; ++q) {
    const Matrix t = x * mult[static_cast<std::size_t>(q)] * y.transpose();
    for (int p = 0; p < dim; ++p)
      out(p, q) = (mult[static_cast<std::size_t>(p)].array() * t.array()).sum();
  }
  return out;
}

Matrix BialgebraDescriptor::star_tensor(const Matrix& x) const {
  return invol.transpose() * x.conjugate() * invol;
}

Matrix BialgebraDescriptor::represent(const Element& a, std::size_t block) const {
  const auto& mats = rep_blocks.at(block);
  Matrix out = Matrix::Zero(mats.front().rows(), mats.front().cols());
  for (int i = 0; i < dim; ++i)
    if (a.coeffs[i] != cplx(0.0)) out += a.coeffs[i] * mats[static_cast<std::size_t>(i)];
  return out;
}

Matrix BialgebraDescriptor::represent(const Element& a) const {
  const int n = rep_dim();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (std::size_t b = 0; b < rep_blocks.size(); ++b) {
    const Eigen::Index m = rep_blocks[b].front().rows();
    out.block(offset, offset, m, m) = represent(a, b);
    offset += m;
  }
  return out;
}

int BialgebraDescriptor::rep_dim() const {
  Eigen::Index n = 0;
  for (const auto& block : rep_blocks) n += block.front().rows();
  return static_cast<int>(n);
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.value);
  return m;
}

double ValidationReport::operator[](const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.value;
  throw std::out_of_range("no residual named " + name);
}

ValidationReport validate(const BialgebraDescriptor& B, double tol) {
  const int d = B.dim;
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  ValidationReport report;
  report.tolerance = tol;
  auto add = [&](const char* name, double v) { report.residuals.push_back({name, v}); };

  std::vector<Element> e;
  for (int i = 0; i < d; ++i) e.push_back(B.basis(i));
  std::vector<std::vector<Element>> prod(idx(d), std::vector<Element>(idx(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[idx(i)][idx(j)] = B.multiply(e[idx(i)], e[idx(j)]);
  std::vector<Element> stars;
  for (int i = 0; i < d; ++i) stars.push_back(B.star(e[idx(i)]));
  const Element one = B.one();

  double assoc = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Vector lhs = B.multiply(prod[idx(i)][idx(j)], e[idx(k)]).coeffs;
        const Vector rhs = B.multiply(e[idx(i)], prod[idx(j)][idx(k)]).coeffs;
        assoc = std::max(assoc, linalg::max_abs(lhs - rhs));
      }
  add("associativity", assoc);

  double unit = 0.0;
  for (int i = 0; i < d; ++i) {
    unit = std::max(unit, linalg::max_abs(B.multiply(one, e[idx(i)]).coeffs - e[idx(i)].coeffs));
    unit = std::max(unit, linalg::max_abs(B.multiply(e[idx(i)], one).coeffs - e[idx(i)].coeffs));
  }
  add("unit", unit);

  double involutive = 0.0;
  double anti = 0.0;
  for (int i = 0; i < d; ++i) {
    involutive = std::max(involutive, linalg::max_abs(B.star(stars[idx(i)]).coeffs - e[idx(i)].coeffs));
    for (int j = 0; j < d; ++j) {
      const Vector lhs = B.star(prod[idx(i)][idx(j)]).coeffs;
      const Vector rhs = B.multiply(stars[idx(j)], stars[idx(i)]).coeffs;
      anti = std::max(anti, linalg::max_abs(lhs - rhs));
    }
  }
  add("involution_involutive", involutive);
  add("involution_antimultiplicative", anti);

  // (Delta (x) id) Delta vs (id (x) Delta) Delta, compared as 3-tensors.
  double coassoc = 0.0;
  for (int i = 0; i < d; ++i) {
    const Matrix& c = B.coproduct[idx(i)];
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        for (int r = 0; r < d; ++r) {
          cplx left = 0.0;
          cplx right = 0.0;
          for (int j = 0; j < d; ++j) left += c(j, r) * B.coproduct[idx(j)](p, q);
          for (int k = 0; k < d; ++k) right += c(p, k) * B.coproduct[idx(k)](q, r);
          coassoc = std::max(coassoc, std::abs(left - right));
        }
  }
  add("coassociativity", coassoc);

  double cop_mult = 0.0;
  double cop_star = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix lhs = B.coproduct_of(prod[idx(i)][idx(j)]);
      const Matrix rhs = B.multiply_tensor(B.coproduct[idx(i)], B.coproduct[idx(j)]);
      cop_mult = std::max(cop_mult, linalg::max_abs(lhs - rhs));
    }
    const Matrix lhs = B.coproduct_of(stars[idx(i)]);
    const Matrix rhs = B.star_tensor(B.coproduct[idx(i)]);
    cop_star = std::max(cop_star, linalg::max_abs(lhs - rhs));
  }
  add("coproduct_multiplicative", cop_mult);
  add("coproduct_star", cop_star);
  add("coproduct_unital",
      linalg::max_abs(B.coproduct_of(one) - B.unit * B.unit.transpose()));

  add("counit_character", character_residual(B, B.counit_functional()));

  double counital = 0.0;
  for (int i = 0; i < d; ++i) {
    const Matrix& c = B.coproduct[idx(i)];
    counital = std::max(counital, linalg::max_abs(c * B.counit - e[idx(i)].coeffs));
    counital = std::max(counital, linalg::max_abs(c.transpose() * B.counit - e[idx(i)].coeffs));
  }
  add("counital_property", counital);

  double rep_mult = 0.0;
  double rep_star = 0.0;
  for (std::size_t b = 0; b < B.rep_blocks.size(); ++b) {
    for (int i = 0; i < d; ++i) {
      const Matrix ri = B.rep_blocks[b][idx(i)];
      for (int j = 0; j < d; ++j) {
        const Matrix lhs = B.represent(prod[idx(i)][idx(j)], b);
        rep_mult = std::max(rep_mult, linalg::max_abs(lhs - ri * B.rep_blocks[b][idx(j)]));
      }
      rep_star = std::max(rep_star, linalg::max_abs(B.represent(stars[idx(i)], b) - ri.adjoint()));
    }
  }
  add("rep_multiplicative", rep_mult);
  add("rep_star", rep_star);
  const Matrix rep_one = B.represent(one);
  add("rep_unital", linalg::max_abs(rep_one - Matrix::Identity(rep_one.rows(), rep_one.cols())));

  // Columns are the vectorized images of the basis; injective iff full column rank.
  const int n = B.rep_dim();
  Matrix images(static_cast<Eigen::Index>(n) * n, d);
  for (int i = 0; i < d; ++i) {
    const Matrix r = B.represent(e[idx(i)]);
    images.col(i) = Eigen::Map<const Vector>(r.data(), r.size());
  }
  add("rep_faithful", static_cast<double>(d - linalg::numerical_rank(images)));

  report.pass = report.max_residual() <= tol;
  return report;
}

int check_group_table(const GroupTable& table) {
  const int n = static_cast<int>(table.size());
  auto fail = [](const std::string& what) { throw Error(ErrorCode::not_a_group, what); };
  if (n == 0) fail("empty group table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) fail("group table must be square");
    for (int v : row)
      if (v < 0 || v >= n) fail("group table entry out of range");
  }
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[idx(e)][idx(g)] == g && table[idx(g)][idx(e)] == g;
    if (ok) identity = e;
  }
  if (identity < 0) fail("no identity element");
  for (int g = 0; g < n; ++g) {
    bool has_inverse = false;
    for (int h = 0; h < n && !has_inverse; ++h)
      has_inverse = table[idx(g)][idx(h)] == identity && table[idx(h)][idx(g)] == identity;
    if (!has_inverse) fail("element " + std::to_string(g) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[idx(table[idx(a)][idx(b)])][idx(c)] != table[idx(a)][idx(table[idx(b)][idx(c)])])
          fail("multiplication is not associative");
  return identity;
}

std::vector<int> group_inverses(const GroupTable& table) {
  const int e = check_group_table(table);
  const int n = static_cast<int>(table.size());
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] == e) inv[static_cast<std::size_t>(g)] = h;
  return inv;
}

BialgebraDescriptor function_algebra(const GroupTable& table) {
  const int e = check_group_table(table);
  const int n = static_cast<int>(table.size());
  BialgebraDescriptor B;
  B.dim = n;
  for (int g = 0; g < n; ++g) B.labels.push_back("delta_" + std::to_string(g));
  B.mult.assign(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int k = 0; k < n; ++k) B.mult[static_cast<std::size_t>(k)](k, k) = 1.0;
  B.unit = Vector::Ones(n);
  B.invol = Matrix::Identity(n, n);
  B.coproduct.assign(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      B.coproduct[static_cast<std::size_t>(table[static_cast<std::size_t>(h)][static_cast<std::size_t>(k)])](h, k) = 1.0;
  B.counit = Vector::Zero(n);
  B.counit[e] = 1.0;
  std::vector<Matrix> block;
  for (int g = 0; g < n; ++g) {
    Matrix m = Matrix::Zero(n, n);
    m(g, g) = 1.0;
    block.push_back(m);
  }
  B.rep_blocks.push_back(std::move(block));
  return B;
}

BialgebraDescriptor group_algebra(const GroupTable& table) {
  const int e = check_group_table(table);
  const std::vector<int> inv = group_inverses(table);
  const int n = static_cast<int>(table.size());
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  BialgebraDescriptor B;
  B.dim = n;
  for (int g = 0; g < n; ++g) B.labels.push_back("u_" + std::to_string(g));
  B.mult.assign(idx(n), Matrix::Zero(n, n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) B.mult[idx(table[idx(g)][idx(h)])](g, h) = 1.0;
  B.unit = Vector::Zero(n);
  B.unit[e] = 1.0;
  B.invol = Matrix::Zero(n, n);
  for (int g = 0; g < n; ++g) B.invol(g, inv[idx(g)]) = 1.0;
  B.coproduct.assign(idx(n), Matrix::Zero(n, n));
  for (int g = 0; g < n; ++g) B.coproduct[idx(g)](g, g) = 1.0;
  B.counit = Vector::Ones(n);
  std::vector<Matrix> block;
  for (int g = 0; g < n; ++g) {
    Matrix m = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) m(table[idx(g)][idx(h)], h) = 1.0;
    block.push_back(m);
  }
  B.rep_blocks.push_back(std::move(block));
  return B;
}

GroupTable cyclic_group(int n) {
  GroupTable t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return t;
}

GroupTable symmetric_group_s3() {
  // Permutations of {0,1,2} in lexicographic order; (gh)(x) = g(h(x)).
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  GroupTable t(n, std::vector<int>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      std::array<int, 3> c{};
      for (std::size_t x = 0; x < 3; ++x) c[x] = perms[g][static_cast<std::size_t>(perms[h][x])];
      t[g][h] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

PositivityResult element_positive(const BialgebraDescriptor& B, const Element& a, double tol) {
  PositivityResult out;
  out.margin = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < B.rep_blocks.size(); ++b) {
    const Matrix r = B.represent(a, b);
    out.hermiticity = std::max(out.hermiticity, linalg::max_abs(r - r.adjoint()));
    out.margin = std::min(out.margin, linalg::min_hermitian_eigenvalue(r));
  }
  out.positive = out.hermiticity <= tol && out.margin >= -tol;
  return out;
}

Matrix functional_gram(const BialgebraDescriptor& B, const Functional& phi) {
  const int d = B.dim;
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    const Element si = B.star(B.basis(i));
    for (int j = 0; j < d; ++j) g(i, j) = phi(B.multiply(si, B.basis(j)));
  }
  return g;
}

StateCheck functional_is_state(const BialgebraDescriptor& B, const Functional& phi, double tol) {
  StateCheck out;
  out.value_at_unit = phi(B.one());
  const Matrix g = functional_gram(B, phi);
  out.hermiticity = linalg::max_abs(g - g.adjoint());
  out.gram_min_eig = linalg::min_hermitian_eigenvalue(g);
  out.is_state = std::abs(out.value_at_unit - 1.0) <= tol && out.gram_min_eig >= -tol &&
                 out.hermiticity <= tol;
  return out;
}

double reality_residual(const BialgebraDescriptor& B, const Functional& phi) {
  double r = 0.0;
  for (int i = 0; i < B.dim; ++i)
    r = std::max(r, std::abs(phi(B.star(B.basis(i))) - std::conj(phi.at(i))));
  return r;
}

double character_residual(const BialgebraDescriptor& B, const Functional& chi) {
  double r = std::abs(chi(B.one()) - 1.0);
  for (int i = 0; i < B.dim; ++i) {
    const Element ei = B.basis(i);
    r = std::max(r, std::abs(chi(B.star(ei)) - std::conj(chi.at(i))));
    for (int j = 0; j < B.dim; ++j)
      r = std::max(r, std::abs(chi(B.multiply(ei, B.basis(j))) - chi.at(i) * chi.at(j)));
  }
  return r;
}

}  // namespace qlevy
