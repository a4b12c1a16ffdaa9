#include "qlevy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>

#include "qlevy/cocycle.hpp"
#include "qlevy/levy_process.hpp"
#include "qlevy/linalg.hpp"
#include "qlevy/schurmann.hpp"
#include "qlevy/serialization.hpp"

namespace qlevy::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

constexpr const char* kNames[] = {"validate",   "build-algebra", "conv-exp",      "schurmann",
                                  "classify",   "evolve",        "verify-cocycle", "cp-witness",
                                  "walk",       "walk-converge", "levy-verify",   "states"};

double tol_or(const ExperimentConfig& c, double fallback) { return c.tol ? *c.tol : fallback; }

Json resolve(const Json& j, const fs::path& base) {
  if (j.is_string()) return io::read_json(base / j.get<std::string>());
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::precondition, what);
}

Json complex_pair(cplx z) { return Json::array({z.real(), z.imag()}); }

StepFunction load_step(const fs::path& path, int dim) {
  if (path.empty()) return StepFunction::zero(dim);
  return io::step_function_from_json(io::read_json(path));
}

BialgebraDescriptor load_algebra(const ExperimentConfig& c) {
  require(!c.algebra.empty(), std::string(to_string(c.kind)) + " needs --algebra");
  return io::load_descriptor(c.algebra);
}

Functional load_gamma(const ExperimentConfig& c, const BialgebraDescriptor& B) {
  require(!c.gamma.empty(), std::string(to_string(c.kind)) + " needs --gamma");
  Functional g = io::functional_from_json(io::read_json(c.gamma));
  if (g.size() != B.dim) throw Error(ErrorCode::shape, "functional length differs from the algebra dimension");
  return g;
}

LoadedSpec spec_of(const ExperimentConfig& c) {
  require(!c.spec.empty(), std::string(to_string(c.kind)) + " needs --spec");
  return load_spec(c.spec);
}

std::vector<std::string> coefficient_header(const BialgebraDescriptor& B) {
  std::vector<std::string> h;
  for (int i = 0; i < B.dim; ++i) {
    const std::string label = B.labels.empty() ? std::to_string(i) : B.labels[static_cast<std::size_t>(i)];
    h.push_back("re_" + label);
    h.push_back("im_" + label);
  }
  return h;
}

void append_coefficients(std::vector<std::string>& row, const Functional& f) {
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    row.push_back(format_number(f.at(i).real()));
    row.push_back(format_number(f.at(i).imag()));
  }
}

// Default witness family: the vacuum pair and one pair with dyadic breakpoints.
std::vector<StepPair> default_witnesses(int k) {
  std::vector<StepPair> out{{StepFunction::zero(k), StepFunction::zero(k)}};
  if (k == 0) return out;
  Vector a = Vector::Zero(k), b = Vector::Zero(k), c = Vector::Zero(k), d = Vector::Zero(k);
  a[0] = 0.5;
  b[0] = 0.25;
  c[k - 1] = 0.3;
  d[0] = -0.2;
  out.emplace_back(StepFunction({0.5}, {a, b}, {Rational{1, 2}}), StepFunction({0.25}, {c, d}, {Rational{1, 4}}));
  return out;
}

Report run_validate(const ExperimentConfig& c) {
  const BialgebraDescriptor B = load_algebra(c);
  const double tol = tol_or(c, 1e-10);
  const ValidationReport v = validate(B, tol);
  Report r{"validate"};
  for (const auto& res : v.residuals) r.checks.push_back({res.name, res.value, tol});
  r.data["dim"] = B.dim;
  r.data["labels"] = B.labels;
  return r;
}

Report run_build_algebra(const ExperimentConfig& c) {
  Json spec;
  spec["family"] = c.family;
  if (fs::exists(c.group))
    spec["group"] = Json{{"table", io::read_json(c.group)}};
  else
    spec["group"] = c.group;
  const BialgebraDescriptor B = io::descriptor_from_json(spec);
  const double tol = tol_or(c, 1e-12);
  const ValidationReport v = validate(B, tol);
  Report r{"build-algebra"};
  r.checks.push_back({"max_residual", v.max_residual(), tol});
  r.data = io::to_json(B);
  return r;
}

Report run_conv_exp(const ExperimentConfig& c) {
  const BialgebraDescriptor B = load_algebra(c);
  const Functional gamma = load_gamma(c, B);
  const std::vector<double> times = c.time_grid.empty() ? std::vector<double>{c.t} : parse_time_grid(c.time_grid);
  require(c.method == "rmap" || c.method == "series", "--method must be rmap or series");
  const ExpAlgorithm method = c.method == "rmap" ? ExpAlgorithm::rmap : ExpAlgorithm::series;
  Report r{"conv-exp"};
  CsvTable table;
  table.header = {"t"};
  for (const auto& h : coefficient_header(B)) table.header.push_back(h);
  double agreement = 0.0;
  r.data["values"] = Json::array();
  for (double t : times) {
    require(t >= 0.0, "conv-exp: times must be nonnegative");
    const Functional p = conv_exp(B, gamma, t, method);
    const Functional q = conv_exp(B, gamma, t, method == ExpAlgorithm::rmap ? ExpAlgorithm::series : ExpAlgorithm::rmap);
    agreement = std::max(agreement, distance(p, q));
    std::vector<std::string> row{format_number(t)};
    append_coefficients(row, p);
    table.rows.push_back(std::move(row));
    r.data["values"].push_back(Json{{"t", t}, {"coeffs", io::to_json(p)}});
  }
  r.checks.push_back({"series_vs_rmap", agreement, tol_or(c, 1e-10)});
  r.table = std::move(table);
  return r;
}

Report run_schurmann(const ExperimentConfig& c) {
  const BialgebraDescriptor B = load_algebra(c);
  const Functional gamma = load_gamma(c, B);
  const double tol = tol_or(c, 1e-9);
  const SchurmannTriple triple = gns_triple(B, gamma);
  const KernelMap phi = assemble_structure_map(B, triple);
  Report r{"schurmann"};
  r.checks.push_back({"structure_relation", verify_structure_relation(B, phi, B.counit_functional()), tol});
  r.checks.push_back({"phi_one", linalg::max_abs(phi(B.one())), tol});
  r.checks.push_back({"hermiticity", hermiticity_residual(B, phi), tol});
  if (triple.xi) {
    const ImplementingPair pair = extract_implementing_pair(B, phi);
    r.checks.push_back({"implementing_pair", pair.residual, tol});
    r.checks.push_back({"pi_homomorphism", pair.homomorphism, tol});
  }
  r.data["triple"] = io::to_json(triple);
  r.data["phi"] = io::to_json(phi);
  return r;
}

Witness load_witness(const fs::path& path, const BialgebraDescriptor& B) {
  if (path.empty()) return {};
  const Json j = io::read_json(path);
  if (j.contains("psi")) {
    return ContractiveWitness{io::kernel_map_from_json(j.at("psi")), io::vector_from_json(j.at("zeta"))};
  }
  if (j.contains("rho")) {
    PreunitalWitness w;
    for (const auto& r : j.at("rho")) w.rho.push_back(io::matrix_from_json(r));
    w.isometry = io::matrix_from_json(j.at("isometry"));
    w.xi = io::vector_from_json(j.at("xi"));
    if (w.rho.size() != static_cast<std::size_t>(B.dim))
      throw Error(ErrorCode::witness_shape, "witness needs one rho block per basis element");
    return w;
  }
  throw Error(ErrorCode::parse, "witness needs either psi and zeta or rho, isometry and xi");
}

Report run_classify(const ExperimentConfig& c) {
  BialgebraDescriptor algebra;
  KernelMap phi;
  if (!c.phi.empty()) {
    algebra = load_algebra(c);
    phi = io::kernel_map_from_json(io::read_json(c.phi));
    if (phi.algebra_dim() != algebra.dim) throw Error(ErrorCode::shape, "kernel map does not match the algebra");
  } else {
    LoadedSpec spec = spec_of(c);
    algebra = std::move(spec.algebra);
    phi = std::move(spec.phi);
  }
  const Classification cls = classify_generator(algebra, phi, load_witness(c.witness, algebra), tol_or(c, 1e-8));
  Report r{"classify"};
  r.data["class"] = to_string(cls.kind);
  r.data["structure_residual"] = cls.structure_residual;
  r.data["phi_one_max_eig"] = cls.phi_one_max_eig;
  r.data["preunital"] = cls.preunital;
  if (cls.choi_min_eig) r.data["choi_min_eig"] = *cls.choi_min_eig;
  if (cls.decomposition_residual) r.data["decomposition_residual"] = *cls.decomposition_residual;
  r.data["certificate"] = cls.certificate;
  return r;
}

Report run_evolve(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const CocycleSpec cs = CocycleSpec::make(spec.algebra, spec.phi, spec.eta);
  const int k = spec.phi.noise_dim();
  const StepFunction f = load_step(c.f, k);
  const StepFunction g = load_step(c.g, k);
  const Element b = parse_element(spec.algebra, c.element);
  const std::vector<double> times = c.time_grid.empty() ? std::vector<double>{c.t} : parse_time_grid(c.time_grid);
  Report r{"evolve"};
  CsvTable table{{"t", "re", "im"}, {}};
  r.data["values"] = Json::array();
  for (double t : times) {
    require(t >= 0.0, "evolve: t must be nonnegative");
    const cplx v = cocycle_matrix_element(cs, f, g, t, b, c.t_max);
    table.rows.push_back({format_number(t), format_number(v.real()), format_number(v.imag())});
    r.data["values"].push_back(Json{{"t", t}, {"value", complex_pair(v)}});
  }
  r.data["convention"] = "<e(f), l_t(b) e(g)>, conjugate-linear in f";
  r.table = std::move(table);
  return r;
}

Report run_verify_cocycle(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const CocycleSpec cs = CocycleSpec::make(spec.algebra, spec.phi, spec.eta);
  const int k = spec.phi.noise_dim();
  const StepFunction f = load_step(c.f, k);
  const StepFunction g = load_step(c.g, k);
  Report r{"verify-cocycle"};
  r.checks.push_back({"cocycle_identity", verify_cocycle_identity(cs, f, g, c.s, c.t), tol_or(c, 1e-9)});
  r.data["s"] = c.s;
  r.data["t"] = c.t;
  return r;
}

Report run_cp_witness(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const CocycleSpec cs = CocycleSpec::make(spec.algebra, spec.phi, spec.eta);
  const int k = spec.phi.noise_dim();
  const int d = spec.algebra.dim;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto random_vector = [&](int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(unit(rng), unit(rng));
    return v;
  };
  double worst = std::numeric_limits<double>::infinity();
  Json best;
  constexpr int kFamily = 3;
  for (int trial = 0; trial < c.samples; ++trial) {
    std::vector<StepFunction> fs;
    std::vector<Element> as;
    for (int i = 0; i < kFamily; ++i) {
      const double bp = 0.5 * c.t * (1.0 + unit(rng)) * 0.999 + 1e-3;
      fs.emplace_back(std::vector<double>{bp}, std::vector<Vector>{random_vector(k), random_vector(k)});
      as.push_back(Element{random_vector(d)});
    }
    const double m = cp_gram_witness(cs, c.t, fs, as, c.t_max);
    if (m < worst) {
      worst = m;
      best = Json::object();
      best["trial"] = trial;
      best["f"] = Json::array();
      best["a"] = Json::array();
      for (int i = 0; i < kFamily; ++i) {
        best["f"].push_back(io::to_json(fs[static_cast<std::size_t>(i)]));
        best["a"].push_back(io::to_json(as[static_cast<std::size_t>(i)].coeffs));
      }
    }
  }
  Report r{"cp-witness"};
  r.checks.push_back({"min_eigenvalue", worst, tol_or(c, 1e-9), true});
  r.data["seed"] = c.seed;
  r.data["samples"] = c.samples;
  r.data["worst"] = best;
  return r;
}

const WalkSource& source_of(const LoadedSpec& spec) {
  if (!spec.source) throw Error(ErrorCode::precondition, "the generator is not implemented by a (pi, xi) pair");
  return *spec.source;
}

Report run_walk(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const WalkSource& src = source_of(spec);
  const WalkScheme scheme = walk_map(spec.algebra, src.pi, src.xi, src.isometry, c.h);
  const Matrix& v = scheme.coupling;
  const int k = scheme.psi.noise_dim();
  const StepFunction f = load_step(c.f, k);
  const StepFunction g = load_step(c.g, k);
  const Element b = parse_element(spec.algebra, c.element);
  require(c.steps >= 0, "walk: --steps must be nonnegative");
  const cplx value = walk_matrix_element(spec.algebra, scheme.psi, c.h, c.steps, f, g, b, c.t_max);
  Report r{"walk"};
  r.checks.push_back({"isometry", linalg::max_abs(v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())),
                      tol_or(c, 1e-12)});
  if (!src.isometry) {
    double hom = 0.0;
    for (int i = 0; i < spec.algebra.dim; ++i)
      for (int j = 0; j < spec.algebra.dim; ++j)
        hom = std::max(hom, linalg::max_abs(scheme.psi(spec.algebra.multiply(spec.algebra.basis(i), spec.algebra.basis(j))) -
                                            scheme.psi.blocks[static_cast<std::size_t>(i)] *
                                                scheme.psi.blocks[static_cast<std::size_t>(j)]));
    r.checks.push_back({"psi_multiplicative", hom, 1e-10});
  }
  r.data["h"] = c.h;
  r.data["steps"] = c.steps;
  r.data["coupling"] = io::to_json(v);
  r.data["psi"] = io::to_json(scheme.psi);
  r.data["matrix_element"] = complex_pair(value);
  return r;
}

Report run_walk_converge(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const WalkSource& src = source_of(spec);
  const std::vector<double> grid = parse_h_grid(c.h_grid);
  const std::vector<ConvergenceRow> rows =
      convergence_table(spec.algebra, spec.phi, src, c.horizon, spec.witnesses, spec.elements, grid, c.t_max);
  Report r{"walk-converge"};
  CsvTable table{{"h", "err", "ratio"}, {}};
  double increase = 0.0;
  r.data["rows"] = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) increase = std::max(increase, rows[i].err - rows[i - 1].err);
    table.rows.push_back({format_number(rows[i].h), format_number(rows[i].err),
                          rows[i].ratio ? format_number(*rows[i].ratio) : ""});
    Json row{{"h", rows[i].h}, {"err", rows[i].err}};
    row["ratio"] = rows[i].ratio ? Json(*rows[i].ratio) : Json(nullptr);
    r.data["rows"].push_back(std::move(row));
  }
  r.checks.push_back({"err_increase", increase, tol_or(c, 0.0)});
  r.data["T"] = c.horizon;
  r.data["norm"] = "sup over witness pairs, basis elements and grid times n h <= T of |walk - cocycle| matrix elements";
  r.table = std::move(table);
  return r;
}

Report run_levy_verify(const ExperimentConfig& c) {
  const LoadedSpec spec = spec_of(c);
  const WalkSource& src = source_of(spec);
  require(!src.isometry, "levy-verify needs a *-homomorphic walk (no isometry)");
  const WalkScheme scheme = walk_map(spec.algebra, src.pi, src.xi, std::nullopt, c.h);
  const DiscreteLevyProcess process(spec.algebra, scheme.psi, c.steps);
  const double tol = tol_or(c, 1e-10);
  const AxiomReport a = verify_wqlp_axioms(process, {}, tol);
  Report r{"levy-verify"};
  r.checks.push_back({"increment_law", a.increment_law, tol});
  r.checks.push_back({"diagonal", a.diagonal, tol});
  r.checks.push_back({"stationarity", a.stationarity, tol});
  r.checks.push_back({"independence", a.independence, tol});
  r.data["one_step_distance"] = a.one_step_distance;
  r.data["N"] = c.steps;
  r.data["h"] = c.h;
  return r;
}

Report run_states(const ExperimentConfig& c) {
  const BialgebraDescriptor B = load_algebra(c);
  const Functional gamma = load_gamma(c, B);
  const double tol = tol_or(c, 1e-10);
  const std::vector<double> times = parse_time_grid(c.time_grid.empty() ? "0:1:0.1" : c.time_grid);
  const StateSemigroupReport s = semigroup_of_states(B, gamma, times, tol);
  Report r{"states"};
  CsvTable table;
  table.header = {"t"};
  for (const auto& h : coefficient_header(B)) table.header.push_back(h);
  for (const char* h : {"unit_defect", "gram_min_eig", "is_state"}) table.header.push_back(h);
  double unit = 0.0;
  double gram = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<std::string> row{format_number(times[i])};
    append_coefficients(row, s.states[i]);
    const double defect = std::abs(s.checks[i].value_at_unit - 1.0);
    unit = std::max(unit, defect);
    gram = std::min(gram, s.checks[i].gram_min_eig);
    row.push_back(format_number(defect));
    row.push_back(format_number(s.checks[i].gram_min_eig));
    row.push_back(s.checks[i].is_state ? "1" : "0");
    table.rows.push_back(std::move(row));
  }
  double semigroup = 0.0;
  for (double x : s.semigroup_residuals) semigroup = std::max(semigroup, x);
  r.checks.push_back({"unit_defect", unit, tol});
  r.checks.push_back({"gram_min_eig", gram, tol, true});
  r.checks.push_back({"semigroup", semigroup, 1e-9});
  r.table = std::move(table);
  return r;
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept { return kNames[static_cast<int>(kind)]; }

std::optional<ExperimentKind> kind_from_string(const std::string& name) {
  for (int i = 0; i < static_cast<int>(std::size(kNames)); ++i)
    if (name == kNames[i]) return static_cast<ExperimentKind>(i);
  return std::nullopt;
}

LoadedSpec load_spec(const fs::path& path) {
  const Json j = io::read_json(path);
  const fs::path base = path.parent_path();
  if (!j.contains("algebra")) throw Error(ErrorCode::parse, "spec needs an 'algebra' entry");
  LoadedSpec spec;
  spec.algebra = io::descriptor_from_json(resolve(j.at("algebra"), base));
  const BialgebraDescriptor& B = spec.algebra;
  if (j.contains("gamma")) {
    spec.gamma = io::functional_from_json(resolve(j.at("gamma"), base));
    if (spec.gamma->size() != B.dim) throw Error(ErrorCode::shape, "gamma length differs from the algebra dimension");
    const SchurmannTriple triple = gns_triple(B, *spec.gamma);
    spec.phi = assemble_structure_map(B, triple);
    if (triple.xi) {
      double r = 0.0;
      for (int i = 0; i < B.dim; ++i) r = std::max(r, linalg::max_abs(spec.phi.nu(i) * *triple.xi - spec.phi.delta(i)));
      if (r <= 1e-9) spec.source = WalkSource{triple.pi, *triple.xi, std::nullopt};
    }
  } else if (j.contains("triple")) {
    const Json t = resolve(j.at("triple"), base);
    WalkSource src;
    for (const auto& p : t.at("pi")) src.pi.push_back(io::matrix_from_json(p));
    src.xi = io::vector_from_json(t.at("xi"));
    if (t.contains("isometry")) src.isometry = io::matrix_from_json(t.at("isometry"));
    spec.phi = implemented_map(B, src.pi, src.xi, src.isometry);
    spec.source = std::move(src);
  } else if (j.contains("phi")) {
    spec.phi = io::kernel_map_from_json(resolve(j.at("phi"), base));
    const ImplementingPair pair = extract_implementing_pair(B, spec.phi);
    if (pair.residual <= 1e-9 && pair.homomorphism <= 1e-9) spec.source = WalkSource{pair.pi, pair.xi, std::nullopt};
  } else {
    throw Error(ErrorCode::parse, "spec needs one of 'gamma', 'triple' or 'phi'");
  }
  if (spec.phi.algebra_dim() != B.dim) throw Error(ErrorCode::shape, "generator does not match the algebra");
  if (j.contains("eta")) spec.eta = io::functional_from_json(resolve(j.at("eta"), base));
  const int k = spec.phi.noise_dim();
  if (j.contains("witnesses")) {
    for (const auto& w : j.at("witnesses"))
      spec.witnesses.emplace_back(io::step_function_from_json(resolve(w.at("f"), base)),
                                  io::step_function_from_json(resolve(w.at("g"), base)));
  } else {
    spec.witnesses = default_witnesses(k);
  }
  if (j.contains("elements")) {
    for (const auto& e : j.at("elements"))
      spec.elements.push_back(parse_element(B, e.is_string() ? e.get<std::string>() : e.dump()));
  } else {
    for (int i = 0; i < B.dim; ++i) spec.elements.push_back(B.basis(i));
  }
  return spec;
}

Element parse_element(const BialgebraDescriptor& B, const std::string& text) {
  if (text == "one") return B.one();
  for (int i = 0; i < static_cast<int>(B.labels.size()); ++i)
    if (B.labels[static_cast<std::size_t>(i)] == text) return B.basis(i);
  if (!text.empty() && text.front() == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::parse, "bad element '" + text + "'");
    }
    Element e{io::vector_from_json(j)};
    if (e.size() != B.dim) throw Error(ErrorCode::shape, "element length differs from the algebra dimension");
    return e;
  }
  int index = -1;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size() || index < 0 || index >= B.dim)
    throw Error(ErrorCode::parse, "unknown element '" + text + "'");
  return B.basis(index);
}

std::vector<double> parse_time_grid(const std::string& text) {
  std::vector<double> out;
  const auto number = [&](const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorCode::parse, "bad number '" + s + "'");
    return x;
  };
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto second = text.find(':', colon + 1);
    if (second == std::string::npos) throw Error(ErrorCode::parse, "grid needs start:stop:step");
    const double start = number(text.substr(0, colon));
    const double stop = number(text.substr(colon + 1, second - colon - 1));
    const double step = number(text.substr(second + 1));
    if (!(step > 0.0) || stop < start) throw Error(ErrorCode::parse, "grid needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(number(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::parse, "empty grid");
  return out;
}

std::vector<double> parse_h_grid(const std::string& text) {
  static const std::regex dyadic(R"(\s*2\^-(\d+)\s*\.\.\s*2\^-(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, dyadic)) {
    const int from = std::stoi(m[1]);
    const int to = std::stoi(m[2]);
    if (to < from) throw Error(ErrorCode::parse, "h grid must decrease");
    return dyadic_grid(from, to);
  }
  std::vector<double> out = parse_time_grid(text);
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] < out[i - 1])) throw Error(ErrorCode::parse, "h grid must decrease");
  return out;
}

Report execute(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::validate: return run_validate(config);
    case ExperimentKind::build_algebra: return run_build_algebra(config);
    case ExperimentKind::conv_exp: return run_conv_exp(config);
    case ExperimentKind::schurmann: return run_schurmann(config);
    case ExperimentKind::classify: return run_classify(config);
    case ExperimentKind::evolve: return run_evolve(config);
    case ExperimentKind::verify_cocycle: return run_verify_cocycle(config);
    case ExperimentKind::cp_witness: return run_cp_witness(config);
    case ExperimentKind::walk: return run_walk(config);
    case ExperimentKind::walk_converge: return run_walk_converge(config);
    case ExperimentKind::levy_verify: return run_levy_verify(config);
    case ExperimentKind::states: return run_states(config);
  }
  throw Error(ErrorCode::precondition, "unknown experiment");
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const auto error_record = [&](const char* code, const std::string& message, double residual) {
    Json e;
    e["error"] = {{"code", code}, {"message", message}, {"residual", residual}};
    err << e.dump() << '\n';
  };
  try {
    const Report report = execute(config);
    // build-algebra writes the descriptor itself so its output loads directly.
    const auto emit = [&](std::ostream& os) {
      if (config.kind == ExperimentKind::build_algebra && config.format == ReportFormat::json) {
        os << report.data.dump(2) << '\n';
        os.flush();
        if (!os) throw Error(ErrorCode::io, "failed to write descriptor");
      } else {
        emit_report(report, config.format, os);
      }
    };
    if (config.out.empty()) {
      emit(out);
    } else {
      std::ofstream file(config.out);
      if (!file) throw Error(ErrorCode::io, "cannot write " + config.out.string());
      emit(file);
    }
    return report.pass() ? kExitPass : kExitCertification;
  } catch (const Error& e) {
    error_record(qlevy::to_string(e.code()), e.what(), e.residual());
    return e.code() == ErrorCode::io ? kExitIo : kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    error_record("PARSE", e.what(), 0.0);
    return kExitPrecondition;
  }
}

}  // namespace qlevy::cli
