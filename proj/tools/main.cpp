#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char **argv)
{
  using dihedral::cli::RunConfig;
  CLI::App app{"Exact computations for Cantor minimal actions of the infinite dihedral group"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App *sub, bool needs_system) {
    auto *opt = sub->add_option("--system", config.system_path, "system description (JSON file)");
    if (needs_system)
      opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", config.out_path, "output file (default: stdout)");
    sub->add_option("--max-level", config.max_level, "level bound");
    sub->add_option("--eps", config.eps, "tolerance P/Q");
    sub->add_option("--K", config.K, "JSON list of [n,s] pairs");
    sub->add_option("--method", config.method, "comp, freeproduct or both")
        ->check(CLI::IsMember({"comp", "freeproduct", "both"}));
    sub->add_option("--seed", config.seed, "seed for randomized checks");
  };

  auto *fixed = app.add_subcommand("fixed-points", "fixed points or stable thread counts of group elements");
  add_common(fixed, true);
  auto *folner = app.add_subcommand("folner", "transversal Folner sets F_m");
  add_common(folner, false);
  folner->add_option("--m", config.m, "size of F_m")->required();
  folner->add_flag("--check-transversal", config.check_transversal, "check F_m is a transversal mod m");
  folner->add_option("--ratio", config.ratio, "JSON list of [n,s] pairs for |KF - F|/|F|");
  auto *castle = app.add_subcommand("castle", "first-return castle of a sigma-invariant base");
  add_common(castle, true);
  castle->add_option("--base", config.base, "base set as JSON (default: symmetric cell of --max-level)");
  auto *certify = app.add_subcommand("certify", "almost-finiteness certificate for (K, eps)");
  add_common(certify, true);
  auto *homology = app.add_subcommand("homology", "homology table of the transformation groupoid");
  add_common(homology, true);
  auto *oracle = app.add_subcommand("oracle-check", "bar-complex oracle against the closed formulas");
  add_common(oracle, false);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dihedral::cli::kConfig;
  }
  config.command = app.get_subcommands().front()->get_name();
  return dihedral::cli::run(config, std::cout, std::cerr);
}
