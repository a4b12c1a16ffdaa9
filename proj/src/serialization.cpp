#include "qlevy/serialization.hpp"

#include <charconv>
#include <fstream>

namespace qlevy::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

GroupTable group_from_spec(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "s3") return symmetric_group_s3();
    if (s.rfind("cyclic:", 0) == 0) return cyclic_group(std::stoi(s.substr(7)));
    fail("unknown group '" + s + "'");
  }
  if (j.is_object() && j.contains("cyclic")) return cyclic_group(j.at("cyclic").get<int>());
  if (j.is_object() && j.contains("table")) return group_table_from_json(j.at("table"));
  return group_table_from_json(j);
}

}  // namespace

Json to_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const BialgebraDescriptor& B) {
  Json j;
  j["dim"] = B.dim;
  j["labels"] = B.labels;
  j["mult"] = Json::array();
  for (const auto& m : B.mult) j["mult"].push_back(to_json(m));
  j["unit"] = to_json(B.unit);
  j["invol"] = to_json(B.invol);
  j["coproduct"] = Json::array();
  for (const auto& m : B.coproduct) j["coproduct"].push_back(to_json(m));
  j["counit"] = to_json(B.counit);
  j["rep_blocks"] = Json::array();
  for (const auto& block : B.rep_blocks) {
    Json b = Json::array();
    for (const auto& m : block) b.push_back(to_json(m));
    j["rep_blocks"].push_back(std::move(b));
  }
  return j;
}

Json to_json(const Functional& f) { return to_json(f.coeffs); }

Json to_json(const KernelMap& phi) {
  Json j;
  j["target_dim"] = phi.target_dim;
  j["blocks"] = Json::array();
  for (const auto& b : phi.blocks) j["blocks"].push_back(to_json(b));
  return j;
}

Json to_json(const StepFunction& f) {
  Json j;
  j["breakpoints"] = Json::array();
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    if (const auto& ex = f.exact()[i])
      j["breakpoints"].push_back(std::to_string(ex->num) + "/" + std::to_string(ex->den));
    else
      j["breakpoints"].push_back(f.breakpoints()[i]);
  }
  j["values"] = Json::array();
  for (const auto& v : f.values()) j["values"].push_back(to_json(v));
  return j;
}

Json to_json(const SchurmannTriple& t) {
  Json j;
  j["noise_dim"] = t.noise_dim;
  j["pi"] = Json::array();
  for (const auto& p : t.pi) j["pi"].push_back(to_json(p));
  j["delta"] = Json::array();
  for (const auto& d : t.delta) j["delta"].push_back(to_json(d));
  j["gamma"] = to_json(t.gamma);
  if (t.xi) j["xi"] = to_json(*t.xi);
  return j;
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail("expected a number or [re, im], got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array for a vector");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of rows for a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::shape, "matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

BialgebraDescriptor descriptor_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    const std::string family = j.at("family").get<std::string>();
    const GroupTable table = group_from_spec(field(j, "group"));
    if (family == "function") return function_algebra(table);
    if (family == "group") return group_algebra(table);
    fail("unknown algebra family '" + family + "'");
  }
  try {
    BialgebraDescriptor B;
    B.dim = field(j, "dim").get<int>();
    if (j.contains("labels")) B.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& m : field(j, "mult")) B.mult.push_back(matrix_from_json(m));
    B.unit = vector_from_json(field(j, "unit"));
    B.invol = matrix_from_json(field(j, "invol"));
    for (const auto& m : field(j, "coproduct")) B.coproduct.push_back(matrix_from_json(m));
    B.counit = vector_from_json(field(j, "counit"));
    for (const auto& block : field(j, "rep_blocks")) {
      std::vector<Matrix> b;
      for (const auto& m : block) b.push_back(matrix_from_json(m));
      B.rep_blocks.push_back(std::move(b));
    }
    B.check_shapes();
    return B;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad descriptor: ") + e.what());
  }
}

Functional functional_from_json(const Json& j) {
  if (j.is_object()) return Functional{vector_from_json(field(j, "coeffs"))};
  return Functional{vector_from_json(j)};
}

KernelMap kernel_map_from_json(const Json& j) {
  KernelMap phi;
  const Json& blocks = field(j, "blocks");
  for (const auto& b : blocks) phi.blocks.push_back(matrix_from_json(b));
  phi.target_dim = j.contains("target_dim") ? j.at("target_dim").get<int>()
                                            : (phi.blocks.empty() ? 1 : static_cast<int>(phi.blocks[0].rows()));
  for (const auto& b : phi.blocks)
    if (b.rows() != phi.target_dim || b.cols() != phi.target_dim)
      throw Error(ErrorCode::shape, "kernel map block does not match target_dim");
  return phi;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  Rational r;
  const auto parse_int = [&](std::string_view part, std::int64_t& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) fail("bad rational '" + s + "'");
  };
  const std::string_view sv(s);
  if (slash == std::string::npos) {
    parse_int(sv, r.num);
  } else {
    parse_int(sv.substr(0, slash), r.num);
    parse_int(sv.substr(slash + 1), r.den);
  }
  if (r.den <= 0) fail("rational '" + s + "' needs a positive denominator");
  return r;
}

StepFunction step_function_from_json(const Json& j) {
  std::vector<double> bps;
  std::vector<std::optional<Rational>> exact;
  for (const auto& b : field(j, "breakpoints")) {
    if (b.is_string()) {
      const Rational r = parse_rational(b.get<std::string>());
      bps.push_back(r.value());
      exact.emplace_back(r);
    } else if (b.is_number()) {
      bps.push_back(b.get<double>());
      exact.emplace_back(std::nullopt);
    } else {
      fail("breakpoints must be numbers or 'p/q' strings");
    }
  }
  std::vector<Vector> values;
  for (const auto& v : field(j, "values")) values.push_back(vector_from_json(v));
  return StepFunction(std::move(bps), std::move(values), std::move(exact));
}

GroupTable group_table_from_json(const Json& j) {
  GroupTable table;
  try {
    table = j.get<GroupTable>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad group table: ") + e.what());
  }
  check_group_table(table);
  return table;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

BialgebraDescriptor load_descriptor(const std::filesystem::path& path) { return descriptor_from_json(read_json(path)); }

void save_descriptor(const std::filesystem::path& path, const BialgebraDescriptor& B) { write_json(path, to_json(B)); }

}  // namespace qlevy::io
