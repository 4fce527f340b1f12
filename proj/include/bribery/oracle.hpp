#pragma once

// Exhaustive search used as ground truth for every other solver.

#include <functional>
#include <optional>
#include <vector>

#include "bribery/query.hpp"

namespace bribery {

struct OracleBudget {
  std::size_t max_candidates = 8;
  std::size_t max_voters = 64;
  // Search nodes visited before giving up with CapExceeded.
  std::size_t max_nodes = 50'000'000;
};

// Cheapest witness making the target win, or nullopt if none fits the budget.
// Bribes per block are chosen as counts, so multiplicities stay compact.
std::optional<BriberyWitness> oracle_bribery(const BriberyQuery& q, const OracleBudget& caps = {});

// Goal for score bribery: after the bribes the target's Dodgson (or Young)
// score is at most `at_most`.
struct ScoreGoal {
  enum class Kind { dodgson, young };
  Kind kind;
  Int at_most;
};

std::optional<BriberyWitness> oracle_score_bribery(const BriberyQuery& q, const ScoreGoal& goal,
                                                   const OracleBudget& caps = {});

// Throws std::invalid_argument for malformed witnesses (see check_witness_shape).
bool verify_witness(const BriberyQuery& q, const BriberyWitness& w);
bool verify_score_witness(const BriberyQuery& q, const ScoreGoal& goal, const BriberyWitness& w);

struct ManipulationQuery {
  Election election;  // the honest voters
  Rule rule;
  std::vector<Int> manipulators;  // one weight per manipulator
  CandidateId target = 0;
  WinnerMode mode = WinnerMode::nonunique;

  bool unique() const { return mode == WinnerMode::unique; }
};

// Ballots for the manipulators, in input order, or nullopt.
std::optional<std::vector<Ballot>> oracle_manipulation(const ManipulationQuery& q, const OracleBudget& caps = {});

// Ballots equivalent under `rule` collapse to one representative; for
// positional rules two orders are equivalent when they give every candidate
// the same points. Ballots rejected by `allowed` are dropped first.
std::vector<Ballot> distinct_ballots(std::size_t m, const Rule& rule,
                                     const std::function<bool(const Ballot&)>& allowed = {});

}  // namespace bribery
