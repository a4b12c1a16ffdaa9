#pragma once

// Batch experiments behind the `qlevy` tool. Everything the tool does is
// reachable through run(), so tests drive it without spawning processes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"
#include "qlevy/random_walk.hpp"
#include "qlevy/report.hpp"

namespace qlevy::cli {

enum class ExperimentKind {
  validate,
  build_algebra,
  conv_exp,
  schurmann,
  classify,
  evolve,
  verify_cocycle,
  cp_witness,
  walk,
  walk_converge,
  levy_verify,
  states,
};

const char* to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> kind_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::validate;

  std::filesystem::path algebra;  // descriptor JSON
  std::filesystem::path spec;     // generator spec JSON
  std::filesystem::path gamma;    // functional JSON
  std::filesystem::path f;        // step function JSON
  std::filesystem::path g;
  std::filesystem::path phi;      // kernel map JSON, with --algebra
  std::filesystem::path witness;  // classification witness JSON

  /// build-algebra: "function" or "group", over "cyclic:N", "s3" or a table file.
  std::string family = "function";
  std::string group = "cyclic:2";

  /// Basis label, index, "one", or a JSON coefficient array.
  std::string element = "one";
  double t = 1.0;
  double s = 0.0;
  double h = 0.25;
  int steps = 4;
  double horizon = 1.0;
  std::optional<double> t_max;
  std::string time_grid;  // "start:stop:step" or comma list
  std::string h_grid = "2^-2..2^-7";
  std::string method = "rmap";
  int samples = 200;

  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  ReportFormat format = ReportFormat::json;
};

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitIo = 4;

/// Executes the experiment and writes its report to config.out (or `out`).
/// Errors are written to `err` as a JSON record {code, message, residual}.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Builds the report without writing it. Throws qlevy::Error.
Report execute(const ExperimentConfig& config);

/// A generator spec: algebra plus a generating functional, a (pi, xi, D)
/// triple, or a kernel map, with paths resolved against the spec file.
struct LoadedSpec {
  BialgebraDescriptor algebra;
  std::optional<Functional> gamma;
  KernelMap phi;
  /// Walk data, when the generator is implemented by a pair.
  std::optional<WalkSource> source;
  std::optional<Functional> eta;
  /// Witness step functions and elements for convergence experiments.
  std::vector<StepPair> witnesses;
  std::vector<Element> elements;
};

LoadedSpec load_spec(const std::filesystem::path& path);

Element parse_element(const BialgebraDescriptor& B, const std::string& text);
std::vector<double> parse_time_grid(const std::string& text);
/// "2^-a..2^-b" or a comma list.
std::vector<double> parse_h_grid(const std::string& text);

}  // namespace qlevy::cli
