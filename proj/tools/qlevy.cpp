#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qlevy/cli.hpp"

namespace {

using qlevy::cli::ExperimentConfig;
using qlevy::cli::ExperimentKind;

struct Options {
  ExperimentConfig config;
  std::string format = "json";
  double tol = 0.0;
  double t_max = 0.0;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "tolerance for the certifications");
  sub->add_option("--seed", o.config.seed, "seed for randomized witness searches");
  sub->add_option("--out", o.config.out, "write the report here instead of stdout");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_algebra(CLI::App* sub, Options& o, bool gamma) {
  sub->add_option("--algebra", o.config.algebra, "bialgebra descriptor (JSON)")->required();
  if (gamma) sub->add_option("--gamma", o.config.gamma, "functional on the algebra (JSON)")->required();
}

void add_spec(CLI::App* sub, Options& o) {
  sub->add_option("--spec", o.config.spec, "generator spec (JSON)")->required();
}

void add_fg(CLI::App* sub, Options& o) {
  sub->add_option("--f", o.config.f, "bra step function (JSON); zero when omitted");
  sub->add_option("--g", o.config.g, "ket step function (JSON); zero when omitted");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution cocycles, Schurmann triples and quantum random walks on finite bialgebras"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, ExperimentKind> kinds;
  const auto sub = [&](const char* name, const char* help, ExperimentKind kind) {
    CLI::App* s = app.add_subcommand(name, help);
    // --h is the walk step size, so help is long-form only.
    s->set_help_flag("--help", "print this help and exit");
    kinds[s] = kind;
    add_common(s, o);
    return s;
  };

  auto* validate = sub("validate", "check the bialgebra axioms", ExperimentKind::validate);
  add_algebra(validate, o, false);

  auto* build = sub("build-algebra", "write the descriptor of F(G) or C[G]", ExperimentKind::build_algebra);
  build->add_option("--family", o.config.family, "function or group")->check(CLI::IsMember({"function", "group"}));
  build->add_option("--group", o.config.group, "cyclic:N, s3, or a Cayley table file");

  auto* conv = sub("conv-exp", "convolution exponential of a functional", ExperimentKind::conv_exp);
  add_algebra(conv, o, true);
  conv->add_option("--t", o.config.t, "time");
  conv->add_option("--grid", o.config.time_grid, "start:stop:step or comma list");
  conv->add_option("--algorithm,--method", o.config.method, "rmap or series")->check(CLI::IsMember({"rmap", "series"}));

  auto* schur = sub("schurmann", "Schurmann triple and structure map of a generating functional",
                    ExperimentKind::schurmann);
  add_algebra(schur, o, true);

  auto* classify = sub("classify", "classify a stochastic generator", ExperimentKind::classify);
  auto* classify_spec = classify->add_option("--spec", o.config.spec, "generator spec (JSON)");
  auto* classify_phi = classify->add_option("--phi", o.config.phi, "kernel map (JSON), with --algebra");
  classify->add_option("--algebra", o.config.algebra, "bialgebra descriptor (JSON)")->needs(classify_phi);
  classify_phi->excludes(classify_spec);
  classify->add_option("--witness", o.config.witness, "decomposition witness (JSON)");

  auto* evolve = sub("evolve", "exponential-vector matrix elements of the cocycle", ExperimentKind::evolve);
  add_spec(evolve, o);
  add_fg(evolve, o);
  evolve->add_option("--t", o.config.t, "time");
  evolve->add_option("--grid", o.config.time_grid, "start:stop:step or comma list");
  evolve->add_option("--b", o.config.element, "basis label, index, 'one' or coefficient array");
  evolve->add_option("--tmax", o.t_max, "exponential-vector horizon");

  auto* verify = sub("verify-cocycle", "check the cocycle identity", ExperimentKind::verify_cocycle);
  add_spec(verify, o);
  add_fg(verify, o);
  verify->add_option("--s", o.config.s, "split time");
  verify->add_option("--t", o.config.t, "time after the split");

  auto* cp = sub("cp-witness", "random search for a complete-positivity violation", ExperimentKind::cp_witness);
  add_spec(cp, o);
  cp->add_option("--t", o.config.t, "time");
  cp->add_option("--samples", o.config.samples, "number of random witness families");
  cp->add_option("--tmax", o.t_max, "exponential-vector horizon");

  auto* walk = sub("walk", "one-step walk map and a walk matrix element", ExperimentKind::walk);
  add_spec(walk, o);
  add_fg(walk, o);
  walk->add_option("--h", o.config.h, "step size");
  walk->add_option("--steps", o.config.steps, "number of steps");
  walk->add_option("--b", o.config.element, "basis label, index, 'one' or coefficient array");
  walk->add_option("--tmax", o.t_max, "exponential-vector horizon");

  auto* conv_walk = sub("walk-converge", "walk versus cocycle error over an h grid", ExperimentKind::walk_converge);
  add_spec(conv_walk, o);
  conv_walk->add_option("--T", o.config.horizon, "largest comparison time");
  conv_walk->add_option("--hgrid", o.config.h_grid, "2^-a..2^-b or a decreasing comma list");
  conv_walk->add_option("--tmax", o.t_max, "exponential-vector horizon");

  auto* levy = sub("levy-verify", "weak Levy process axioms of the discrete walk process", ExperimentKind::levy_verify);
  add_spec(levy, o);
  levy->add_option("--N", o.config.steps, "number of steps");
  levy->add_option("--h", o.config.h, "step size");

  auto* states = sub("states", "state semigroup of a generating functional", ExperimentKind::states);
  add_algebra(states, o, true);
  states->add_option("--grid", o.config.time_grid, "start:stop:step or comma list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qlevy::cli::kExitPrecondition;
  }

  for (const auto& [s, kind] : kinds)
    if (s->parsed()) o.config.kind = kind;
  o.config.format = o.format == "csv" ? qlevy::ReportFormat::csv : qlevy::ReportFormat::json;
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--tol") > 0) o.config.tol = o.tol;
  if (chosen->get_option_no_throw("--tmax") != nullptr && chosen->count("--tmax") > 0) o.config.t_max = o.t_max;
  return qlevy::cli::run(o.config, std::cout, std::cerr);
}
