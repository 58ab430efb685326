// qfock: enumeration dumps, verification suites and series exports.

#include <iostream>

#include "CLI11.hpp"
#include "qfock/cli.hpp"

namespace {

void add_common(CLI::App* cmd, qfock::RunConfig& cfg, std::string& q, std::string& q_matrix) {
  cmd->add_option("--d", cfg.d, "number of variables")->capture_default_str();
  auto* qopt = cmd->add_option("--q", q, "deformation parameter: p/q fraction, integer or decimal");
  auto* mopt = cmd->add_option("--q-matrix", q_matrix, "path to a JSON deformation matrix {d, entries}");
  qopt->excludes(mopt);
  cmd->add_option("--level", cfg.level, "truncation level L (max word length)")->capture_default_str();
  cmd->add_option("--series-m", cfg.series_m, "series truncation M")->capture_default_str();
  cmd->add_option("--mode", cfg.mode, "exact | symbolic | float")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  cmd->add_option("--format", cfg.format, "json | csv")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-deformed Fock space computations and verification suites"};
  app.require_subcommand(1);

  qfock::RunConfig cfg;
  std::string q;
  std::string q_matrix;
  std::string suite = "all";
  std::string what;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg, q, q_matrix);
  verify->add_option("--suite", suite, "commutator | dual-agree | wick-agree | derivative-agree | duality | gibbs | "
                                       "bounds | univar | all")
      ->capture_default_str();

  auto* exp = app.add_subcommand("export", "write a computed object");
  add_common(exp, cfg, q, q_matrix);
  exp->add_option("--what", what, "xi | gibbs | partitions | hermite | fisher")->required();
  exp->add_option("--family", cfg.family, "partition family B | C | D")->capture_default_str();
  exp->add_option("--n", cfg.n, "number of vertices for partition dumps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? qfock::kExitPass : qfock::kExitConfig;
  }
  if (!q.empty()) cfg.q = q;
  if (!q_matrix.empty()) cfg.q_matrix = q_matrix;

  try {
    if (verify->parsed()) return qfock::run_verify(cfg, suite, std::cout, std::cerr);
    return qfock::run_export(cfg, what, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qfock::kExitFail;
  }
}
