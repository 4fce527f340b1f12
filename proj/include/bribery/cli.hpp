#pragma once

// The `bribery` command: solve one instance, generate reduced instances, and
// cross-check every solver against the exhaustive oracle.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bribery/solvers.hpp"

namespace bribery {

struct NamedSolver {
  std::string id;
  // The --solver name that selects it.
  std::string family;
  std::function<bool(const BriberyQuery&)> applies;
  std::function<Outcome(const BriberyQuery&)> solve;
};

// Every polynomial and integer-programming solver, most specific first.
std::vector<NamedSolver> default_solvers();

std::string format_witness(const Election& e, const BriberyWitness& w);

// Flags reproducing q on the command line (without --file).
std::string query_flags(const BriberyQuery& q);

struct BribeOptions {
  std::string file;
  std::string target;
  std::string budget = "0";
  bool priced = false;
  bool weighted = false;
  bool negative = false;
  bool flip = false;
  bool unique = false;
  std::string solver = "auto";
};

// Exit code 0 feasible, 1 infeasible, 2 error.
int run_bribe(const BribeOptions& options, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string kind;  // partition, partition-prime, x3c, embed-manip
  std::vector<std::string> values;
  std::string reduction;
  std::string certificate;  // comma-separated indices
  std::string out;          // file path; stdout when empty
  std::size_t t = 0;        // x3c ground set is 3t elements
  std::string file;         // honest voters for embed-manip
  std::string target;
  std::string manipulators;  // comma-separated weights
  bool unique = false;
};

int run_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  std::size_t max_candidates = 3;
  std::size_t max_voters = 6;
  std::string dump_dir = "check-failures";
};

struct CheckSummary {
  std::size_t instances = 0;
  std::size_t queries = 0;
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  std::size_t skipped = 0;  // over oracle caps
  std::map<std::string, std::size_t> per_solver;
};

// One random query: m <= max_candidates, at most max_voters voters, weights
// and prices 0..4, budget 0..6.
BriberyQuery random_query(std::mt19937_64& rng, std::size_t max_candidates, std::size_t max_voters);

// Every query is checked in both winner modes.
CheckSummary check_instances(const CheckOptions& options, const std::vector<NamedSolver>& solvers, std::ostream& log);

int run_check(const CheckOptions& options, std::ostream& out, const std::vector<NamedSolver>& solvers = default_solvers());

}  // namespace bribery
