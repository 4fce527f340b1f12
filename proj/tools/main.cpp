#include <iostream>

#include <CLI11.hpp>

#include "bribery/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bribery solvers for small elections"};
  app.require_subcommand(1);

  bribery::BribeOptions bribe;
  auto* b = app.add_subcommand("bribe", "decide one bribery instance");
  b->add_option("--file", bribe.file, "election file")->required();
  b->add_option("--target", bribe.target, "candidate to make a winner")->required();
  b->add_option("--budget", bribe.budget, "number of bribes, or total price with --priced")->required();
  b->add_flag("--priced", bribe.priced);
  b->add_flag("--weighted", bribe.weighted);
  b->add_flag("--negative", bribe.negative, "bribed voters may not rank the target first");
  b->add_flag("--flip", bribe.flip, "approval ballots, pay per flipped entry");
  b->add_flag("--unique", bribe.unique, "the target must be the only winner");
  b->add_option("--solver", bribe.solver)
      ->check(CLI::IsMember({"auto", "greedy", "sweep", "dp-prices", "dp-weights", "enum", "ilp", "oracle"}));

  bribery::GenOptions gen;
  auto* g = app.add_subcommand("gen", "emit a bribery instance reduced from another problem");
  g->add_option("kind", gen.kind, "partition, partition-prime, x3c or embed-manip")->required();
  g->add_option("values", gen.values, "partition values, or x3c sets like 0,1,2");
  g->add_option("--reduction", gen.reduction);
  g->add_option("--certificate", gen.certificate, "source solution as comma-separated indices");
  g->add_option("--out", gen.out, "write here plus a .answer sidecar");
  g->add_option("--t", gen.t, "x3c ground set size / 3");
  g->add_option("--file", gen.file, "honest voters for embed-manip");
  g->add_option("--target", gen.target);
  g->add_option("--manipulators", gen.manipulators, "comma-separated weights");
  g->add_flag("--unique", gen.unique);

  bribery::CheckOptions check;
  auto* c = app.add_subcommand("check", "compare every solver with the exhaustive oracle");
  c->add_option("--seed", check.seed);
  c->add_option("--instances", check.instances);
  c->add_option("--max-candidates", check.max_candidates);
  c->add_option("--max-voters", check.max_voters);
  c->add_option("--dump-dir", check.dump_dir, "where mismatching instances are written");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (b->parsed()) return bribery::run_bribe(bribe, std::cout, std::cerr);
  if (g->parsed()) return bribery::run_gen(gen, std::cout, std::cerr);
  return bribery::run_check(check, std::cout);
}
