#pragma once

// Polynomial-time bribery algorithms for the tractable variants. Every solver
// returns the bribes it found, or nullopt when the instance is infeasible, and
// throws std::invalid_argument when the query is outside its scope.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bribery/query.hpp"

namespace bribery {

using Outcome = std::optional<BriberyWitness>;

// Plurality, unpriced, unweighted. Repeatedly moves one voter of the
// lowest-id rival winner to the target.
Outcome solve_plurality_basic(const BriberyQuery& q);
// Plurality, priced, unweighted. Tries every final score threshold.
Outcome solve_plurality_priced(const BriberyQuery& q);
// Plurality, weighted, unpriced. Thresholds are rival scores after losing a
// prefix of their heaviest voters.
Outcome solve_plurality_weighted(const BriberyQuery& q);
// Plurality, priced, unweighted, negative.
Outcome solve_plurality_negative_priced(const BriberyQuery& q);

// Plurality, priced and weighted, by pivot rival and sub-budget. Table sizes
// grow with the prices.
Outcome solve_plurality_unary_prices(const BriberyQuery& q);
// Same, by pivot rival and bought weight. Table sizes grow with the weights.
Outcome solve_plurality_unary_weights(const BriberyQuery& q);

// Approval with per-entry flips, priced and weighted.
Outcome solve_approval_flip_unary_prices(const BriberyQuery& q);
Outcome solve_approval_flip_unary_weights(const BriberyQuery& q);
// Picks the weights variant when q.weights_unary is set, the prices variant
// otherwise.
Outcome solve_approval_flip(const BriberyQuery& q);

// Any positional rule, priced, unweighted; enumerates per-order bribe counts.
Outcome solve_scoring_priced(const BriberyQuery& q, std::size_t max_candidates = 3);
// Bribes the b_i cheapest voters of each order o_i and hands d_j of them
// order o_j, for every choice of b and d within budget. Returns the first
// shape whose per-order voter counts pass `accept`. Unweighted queries.
Outcome enumerate_bribery_shapes(const BriberyQuery& q, const std::function<bool(const std::vector<std::size_t>&)>& accept);

// Any positional rule, priced and weighted, by per-order weight splits.
Outcome solve_scoring_unary_weights(const BriberyQuery& q, std::size_t max_candidates = 3);

// Lowest cost of sending the voters of one order to the other orders, per
// vector of weights received by each order. Keys are indexed like
// all_orders(m); absent keys are unrealizable splits.
std::map<std::vector<std::size_t>, Int> split_costs(const std::vector<Unit>& voters, std::size_t own_order,
                                                    std::size_t order_count);

// Veto, unpriced, unweighted.
Outcome solve_veto(const BriberyQuery& q);

enum class Complexity { polynomial, np_complete };

struct DichotomyVerdict {
  Complexity complexity;
  std::string justification;

  bool operator==(const DichotomyVerdict&) const = default;
};

enum class Unary { none, prices, weights };

struct BriberyVariant {
  bool priced = false;
  bool weighted = false;
  Unary unary = Unary::none;
};

DichotomyVerdict classify_dichotomy(const ScoringProtocol& alpha, const BriberyVariant& variant);

}  // namespace bribery
