#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "d4walk/error.hpp"

using namespace d4walk::cli;

int main(int argc, char** argv) {
  CLI::App app{"Quantum walk state transfer on diameter-4 trees"};
  app.require_subcommand(1);

  InfoOptions info;
  auto* info_cmd = app.add_subcommand("info", "Structure, spectrum and cospectral pairs");
  info_cmd->add_option("--params", info.params_file, "JSON tree parameters")->required();

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Fidelity and sensitivity over a time grid");
  scan_cmd->add_option("--params", scan.params_file, "JSON tree parameters");
  scan_cmd->add_option("--path", scan.path, "Use the path on N vertices (oracle only)");
  scan_cmd->add_option("--pair", scan.pair, "KIND[:INDEX], e.g. C:0");
  scan_cmd->add_option("--vertices", scan.vertices, "X,Y");
  scan_cmd->add_option("--t0", scan.t0);
  scan_cmd->add_option("--t1", scan.t1);
  scan_cmd->add_option("--steps", scan.steps);
  scan_cmd->add_option("--format", scan.format)->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_flag("--any-pair", scan.any_pair, "Allow pairs that are not strongly cospectral");

  ScheduleOptions sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Readout-time schedules");
  sched_cmd->add_option("--params", sched.params_file, "JSON tree parameters");
  sched_cmd->add_option("--family", sched.family,
                        "type_c | t3 | q_readout | p5_leaf | coupled_q2 | dist4");
  sched_cmd->add_option("--n", sched.n_range, "N, A..B[:STEP] or A,B,C");
  sched_cmd->add_option("--ell", sched.ell_range, "same syntax as --n");
  sched_cmd->add_option("--k", sched.k);
  sched_cmd->add_option("--k2", sched.k2);
  sched_cmd->add_option("--k3", sched.k3);
  sched_cmd->add_option("--q3", sched.q3);
  sched_cmd->add_option("--q", sched.q);
  sched_cmd->add_option("--q2", sched.q2);
  sched_cmd->add_option("--epsilon", sched.epsilon);
  sched_cmd->add_option("--r-max", sched.r_max);
  sched_cmd->add_option("--format", sched.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Oracle equivalence and invariant checks");
  verify_cmd->add_option("--scope", verify.scope)->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--inject-fault", verify.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*info_cmd) return run_info(info, std::cout);
    if (*scan_cmd) return run_scan(scan, std::cout);
    if (*sched_cmd) return run_schedule(sched, std::cout);
    if (*verify_cmd) return run_verify(verify, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
