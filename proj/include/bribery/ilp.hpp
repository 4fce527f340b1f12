#pragma once

// Bounded integer feasibility and the integer programs for bribery with a
// fixed number of candidates.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bribery/oracle.hpp"
#include "bribery/query.hpp"
#include "bribery/solvers.hpp"

namespace bribery {

struct IlpVariable {
  std::string name;
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
};

enum class Relation { le, eq, ge };

struct LinearTerm {
  std::size_t var;
  std::int64_t coef;
};

struct IlpConstraint {
  std::vector<LinearTerm> terms;
  Relation relation;
  std::int64_t rhs;
  std::string label;
};

class IlpModel {
 public:
  std::size_t add_variable(std::string name, std::optional<std::int64_t> lower, std::optional<std::int64_t> upper);
  void add_constraint(std::vector<LinearTerm> terms, Relation relation, std::int64_t rhs, std::string label = {});
  // terms > rhs, stored as terms >= rhs + 1.
  void add_strictly_greater(std::vector<LinearTerm> terms, std::int64_t rhs, std::string label = {});

  const std::vector<IlpVariable>& variables() const { return variables_; }
  const std::vector<IlpConstraint>& constraints() const { return constraints_; }
  std::size_t size() const { return variables_.size(); }

 private:
  std::vector<IlpVariable> variables_;
  std::vector<IlpConstraint> constraints_;
};

using Assignment = std::vector<std::int64_t>;

bool satisfies(const IlpModel& model, const Assignment& x);

class IlpSolver {
 public:
  virtual ~IlpSolver() = default;
  // A point satisfying every constraint within the bounds, or nullopt.
  // Throws std::invalid_argument when a variable lacks a bound.
  virtual std::optional<Assignment> solve(const IlpModel& model) = 0;
};

// Depth-first search over the variable with the smallest remaining domain,
// values ascending, with interval bound propagation to a fixpoint at every
// node.
class DfsIlpSolver : public IlpSolver {
 public:
  explicit DfsIlpSolver(std::size_t node_limit = 20'000'000) : node_limit_(node_limit) {}
  std::optional<Assignment> solve(const IlpModel& model) override;
  std::size_t nodes() const { return nodes_; }

 private:
  std::size_t node_limit_;
  std::size_t nodes_ = 0;
};

std::optional<Assignment> ilp_feasible(const IlpModel& model);

// Everything the models need to know about the m! orders.
struct OrderTables {
  explicit OrderTables(std::size_t m);

  std::size_t m;
  std::vector<PreferenceOrder> orders;                 // lexicographic
  std::vector<std::vector<std::size_t>> wh;            // wh[c][i]: position of c in o_i
  std::vector<std::vector<std::size_t>> switches;      // adjacent-swap distance
  std::vector<std::vector<std::size_t>> agreements;    // agree(o_i, o_j)

  std::size_t count() const { return orders.size(); }
  // +1 when r is ranked above q in o_i, -1 otherwise.
  int who(CandidateId r, CandidateId q, std::size_t i) const;
};

// Voters per order (the election must have unit weights).
std::vector<std::int64_t> order_counts(const Election& e, const OrderTables& tables);

// Index of variable x_{i,j} in the models below.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) { return i * n + j; }

// Scoring bribery: s_{i,j} voters move from o_i to o_j.
IlpModel build_scoring_bribery_model(const BriberyQuery& q, std::size_t max_candidates = 3);
// Bribery b_{i,j} (indices 0..n^2-1), then swaps s_{i,j} (n^2..2n^2-1).
IlpModel build_dodgson_score_bribery_model(const BriberyQuery& q, const Int& t, std::size_t max_candidates = 3);
// Bribery b_{i,j} (0..n^2-1), then removals r_i (n^2..n^2+n-1).
IlpModel build_young_score_bribery_model(const BriberyQuery& q, const Int& t, std::size_t max_candidates = 3);
// One model per order with the target on top, in order index order.
std::vector<IlpModel> build_kemeny_bribery_models(const BriberyQuery& q, std::size_t max_candidates = 3);

// Bribes encoded by x_{i,j} (i != j) starting at `offset`, spread over the
// blocks holding o_i in block order.
BriberyWitness decode_bribes(const BriberyQuery& q, const OrderTables& tables, const Assignment& x, std::size_t offset = 0);

struct SwapMove {
  PreferenceOrder from;
  PreferenceOrder to;
  Int count;
  std::vector<std::size_t> positions;  // one voter's swap sequence
};

struct DodgsonPlan {
  BriberyWitness witness;
  std::vector<SwapMove> swaps;
};

struct YoungPlan {
  BriberyWitness witness;
  std::vector<std::pair<PreferenceOrder, Int>> removals;
};

DodgsonPlan decode_dodgson_plan(const BriberyQuery& q, const Assignment& x);
YoungPlan decode_young_plan(const BriberyQuery& q, const Assignment& x);

// Replays a plan and checks budget, swap or removal count and the Condorcet
// condition.
bool check_dodgson_plan(const BriberyQuery& q, const Int& t, const DodgsonPlan& plan);
bool check_young_plan(const BriberyQuery& q, const Int& t, const YoungPlan& plan);

// Least score by repeated feasibility tests at k = 0.
std::optional<Int> ilp_dodgson_score(const Election& e, CandidateId c);
std::optional<Int> ilp_young_score(const Election& e, CandidateId c);

// Whether some Kemeny model for q is feasible.
bool kemeny_bribery_feasible(const BriberyQuery& q);

// Least budget letting the target reach score <= t, by binary search over
// 0..voters; nullopt when even bribing everyone is not enough.
std::optional<Int> min_bribe_for_score(const BriberyQuery& q, const ScoreGoal& goal);

// Candidates needing the fewest whole-ballot rewrites to become Condorcet
// winners.
std::vector<CandidateId> dodgson_prime_winners(const Election& e);

// Dodgson or Young winner bribery, priced or plain, over all bribery shapes;
// winners are decided with the score programs above.
Outcome solve_full_dodgson_or_young_bribery(const BriberyQuery& q, std::size_t max_candidates = 3);

// Same feasibility tests for any rule, via the matching model family.
// Scoring rules use the s_{i,j} model, Kemeny the model family.
Outcome solve_with_ilp(const BriberyQuery& q);

}  // namespace bribery
