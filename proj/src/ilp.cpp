#include "bribery/ilp.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "bribery/permutations.hpp"
#include "bribery/solvers.hpp"

namespace bribery {

namespace {

using Wide = __int128;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

Wide floor_div(Wide n, Wide d) {
  Wide q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

Wide ceil_div(Wide n, Wide d) {
  Wide q = n / d;
  if (n % d != 0 && ((n < 0) == (d < 0))) ++q;
  return q;
}

std::int64_t clamp64(Wide v) {
  constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::clamp(v, lo, hi));
}

// sum coef * x <= rhs
struct Row {
  std::vector<LinearTerm> terms;
  Wide rhs;
};

struct Domains {
  std::vector<std::int64_t> lo, hi;
};

class Propagator {
 public:
  explicit Propagator(const IlpModel& model) : rows_of_(model.size()) {
    for (const auto& c : model.constraints()) {
      if (c.relation != Relation::ge) add_row(c.terms, c.rhs, 1);
      if (c.relation != Relation::le) add_row(c.terms, c.rhs, -1);
    }
  }

  // Tightens d to a fixpoint; false when some row cannot hold.
  bool run(Domains& d, std::deque<std::size_t> queue) const {
    std::vector<char> queued(rows_.size(), 0);
    for (std::size_t r : queue) queued[r] = 1;
    while (!queue.empty()) {
      const std::size_t r = queue.front();
      queue.pop_front();
      queued[r] = 0;
      const Row& row = rows_[r];
      Wide minact = 0;
      for (const auto& t : row.terms) minact += Wide(t.coef) * (t.coef > 0 ? d.lo[t.var] : d.hi[t.var]);
      if (minact > row.rhs) return false;
      for (const auto& t : row.terms) {
        const Wide own = Wide(t.coef) * (t.coef > 0 ? d.lo[t.var] : d.hi[t.var]);
        const Wide slack = row.rhs - (minact - own);
        bool changed = false;
        if (t.coef > 0) {
          const std::int64_t bound = clamp64(floor_div(slack, t.coef));
          if (bound < d.hi[t.var]) {
            d.hi[t.var] = bound;
            changed = true;
          }
        } else {
          const std::int64_t bound = clamp64(ceil_div(slack, t.coef));
          if (bound > d.lo[t.var]) {
            d.lo[t.var] = bound;
            changed = true;
          }
        }
        if (!changed) continue;
        if (d.lo[t.var] > d.hi[t.var]) return false;
        for (std::size_t other : rows_of_[t.var]) {
          if (!queued[other]) {
            queued[other] = 1;
            queue.push_back(other);
          }
        }
      }
    }
    return true;
  }

  std::deque<std::size_t> all_rows() const {
    std::deque<std::size_t> q(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) q[r] = r;
    return q;
  }

  std::deque<std::size_t> rows_of(std::size_t var) const { return {rows_of_[var].begin(), rows_of_[var].end()}; }

 private:
  void add_row(const std::vector<LinearTerm>& terms, std::int64_t rhs, int sign) {
    Row row{{}, Wide(rhs) * sign};
    for (const auto& t : terms) {
      if (t.coef != 0) row.terms.push_back({t.var, t.coef * sign});
    }
    const std::size_t index = rows_.size();
    for (const auto& t : row.terms) {
      auto& list = rows_of_.at(t.var);
      if (list.empty() || list.back() != index) list.push_back(index);
    }
    rows_.push_back(std::move(row));
  }

  std::vector<Row> rows_;
  std::vector<std::vector<std::size_t>> rows_of_;
};

}  // namespace

std::size_t IlpModel::add_variable(std::string name, std::optional<std::int64_t> lower,
                                   std::optional<std::int64_t> upper) {
  variables_.push_back({std::move(name), lower, upper});
  return variables_.size() - 1;
}

void IlpModel::add_constraint(std::vector<LinearTerm> terms, Relation relation, std::int64_t rhs, std::string label) {
  for (const auto& t : terms) {
    if (t.var >= variables_.size()) throw std::invalid_argument("constraint names an unknown variable");
  }
  constraints_.push_back({std::move(terms), relation, rhs, std::move(label)});
}

void IlpModel::add_strictly_greater(std::vector<LinearTerm> terms, std::int64_t rhs, std::string label) {
  add_constraint(std::move(terms), Relation::ge, rhs + 1, std::move(label));
}

bool satisfies(const IlpModel& model, const Assignment& x) {
  if (x.size() != model.size()) return false;
  for (std::size_t v = 0; v < x.size(); ++v) {
    const auto& var = model.variables()[v];
    if (var.lower && x[v] < *var.lower) return false;
    if (var.upper && x[v] > *var.upper) return false;
  }
  for (const auto& c : model.constraints()) {
    Wide lhs = 0;
    for (const auto& t : c.terms) lhs += Wide(t.coef) * x[t.var];
    if (c.relation == Relation::le && lhs > c.rhs) return false;
    if (c.relation == Relation::ge && lhs < c.rhs) return false;
    if (c.relation == Relation::eq && lhs != c.rhs) return false;
  }
  return true;
}

std::optional<Assignment> DfsIlpSolver::solve(const IlpModel& model) {
  nodes_ = 0;
  Domains root;
  for (const auto& var : model.variables()) {
    if (!var.lower || !var.upper) throw std::invalid_argument("variable " + var.name + " needs both bounds");
    root.lo.push_back(*var.lower);
    root.hi.push_back(*var.upper);
  }
  for (std::size_t v = 0; v < model.size(); ++v) {
    if (root.lo[v] > root.hi[v]) return std::nullopt;
  }
  const Propagator prop(model);
  if (!prop.run(root, prop.all_rows())) return std::nullopt;

  std::optional<Assignment> found;
  auto dfs = [&](auto&& self, const Domains& d) -> bool {
    if (++nodes_ > node_limit_) throw CapExceeded("integer program search exceeded its node limit");
    std::size_t pick = model.size();
    std::int64_t width = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = 0; v < model.size(); ++v) {
      const std::int64_t w = d.hi[v] - d.lo[v];
      if (w > 0 && w < width) {
        width = w;
        pick = v;
      }
    }
    if (pick == model.size()) {
      if (!satisfies(model, d.lo)) return false;
      found = d.lo;
      return true;
    }
    for (std::int64_t value = d.lo[pick]; value <= d.hi[pick]; ++value) {
      Domains child = d;
      child.lo[pick] = child.hi[pick] = value;
      if (prop.run(child, prop.rows_of(pick)) && self(self, child)) return true;
    }
    return false;
  };
  dfs(dfs, root);
  return found;
}

std::optional<Assignment> ilp_feasible(const IlpModel& model) {
  DfsIlpSolver solver;
  return solver.solve(model);
}

OrderTables::OrderTables(std::size_t m_) : m(m_), orders(all_orders(m_)) {
  const std::size_t n = orders.size();
  wh.assign(m, std::vector<std::size_t>(n));
  for (CandidateId c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < n; ++i) wh[c][i] = orders[i].position(c);
  }
  switches.assign(n, std::vector<std::size_t>(n));
  agreements.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      switches[i][j] = kendall_distance(orders[i], orders[j]);
      agreements[i][j] = agree(orders[i], orders[j]);
    }
  }
}

int OrderTables::who(CandidateId r, CandidateId q, std::size_t i) const { return wh[r][i] < wh[q][i] ? 1 : -1; }

std::vector<std::int64_t> order_counts(const Election& e, const OrderTables& tables) {
  require(e.kind() == BallotKind::orders, "order counts need ranked ballots");
  require(e.unit_weights(), "order counts need unit weights");
  require(e.candidate_count() == tables.m, "order tables are for a different candidate count");
  std::vector<std::int64_t> counts(tables.count(), 0);
  for (const auto& b : e.voters()) counts[order_index(b.order())] += to_int64(b.multiplicity);
  return counts;
}

namespace {

struct Base {
  BriberyQuery q;
  OrderTables tables;
  std::vector<std::int64_t> counts;
  std::int64_t voters = 0;
  std::int64_t budget = 0;
};

Base prepare(const BriberyQuery& query, std::size_t max_candidates) {
  query.validate();
  require(!query.weighted, "integer programs need an unweighted query");
  require(!query.priced, "integer programs need an unpriced query");
  require(!query.negative, "integer programs do not model negative bribery");
  require(query.election.kind() == BallotKind::orders, "integer programs need ranked ballots");
  const std::size_t m = query.election.candidate_count();
  if (m > max_candidates) {
    throw CapExceeded("integer programs are limited to " + std::to_string(max_candidates) + " candidates");
  }
  BriberyQuery q = normalized(query);
  OrderTables tables(m);
  auto counts = order_counts(q.election, tables);
  std::int64_t voters = 0;
  for (auto c : counts) voters += c;
  const std::int64_t budget = q.budget > voters ? voters : to_int64(q.budget);
  return {std::move(q), std::move(tables), std::move(counts), voters, budget};
}

// b_{i,j} with row sums n_i and at most `budget` off-diagonal voters.
void add_bribery_block(IlpModel& model, const Base& b, const std::string& name) {
  const std::size_t n = b.tables.count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      model.add_variable(name + "_" + std::to_string(i) + "_" + std::to_string(j), 0, b.counts[i]);
    }
  }
  std::vector<LinearTerm> moved;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LinearTerm> row;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back({pair_index(i, j, n), 1});
      if (i != j) moved.push_back({pair_index(i, j, n), 1});
    }
    model.add_constraint(std::move(row), Relation::eq, b.counts[i], "keep " + std::to_string(i));
  }
  model.add_constraint(std::move(moved), Relation::le, b.budget, "budget");
}

void add_condition(IlpModel& model, std::vector<LinearTerm> terms, bool strict, const std::string& label) {
  if (strict) {
    model.add_strictly_greater(std::move(terms), 0, label);
  } else {
    model.add_constraint(std::move(terms), Relation::ge, 0, label);
  }
}

Election election_from_counts(const Election& like, const OrderTables& tables, const std::vector<std::int64_t>& counts) {
  std::vector<VoterBlock> blocks;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) blocks.push_back(VoterBlock{Ballot(tables.orders[i]), 1, 1, counts[i], {}});
  }
  return Election(like.candidates(), std::move(blocks), BallotKind::orders);
}

}  // namespace

IlpModel build_scoring_bribery_model(const BriberyQuery& query, std::size_t max_candidates) {
  require(query.rule.positional(), "the s model needs a positional rule");
  const Base b = prepare(query, max_candidates);
  const std::size_t n = b.tables.count();
  const ScoringProtocol alpha = b.q.rule.protocol_for(b.tables.m);
  const CandidateId p = b.q.target;
  IlpModel model;
  add_bribery_block(model, b, "s");
  for (CandidateId c = 0; c < b.tables.m; ++c) {
    if (c == p) continue;
    std::vector<LinearTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t gap = to_int64(alpha[b.tables.wh[p][j]] - alpha[b.tables.wh[c][j]]);
        if (gap != 0) terms.push_back({pair_index(i, j, n), gap});
      }
    }
    add_condition(model, std::move(terms), b.q.unique(), "beats " + std::to_string(c));
  }
  return model;
}

IlpModel build_dodgson_score_bribery_model(const BriberyQuery& query, const Int& t, std::size_t max_candidates) {
  const Base b = prepare(query, max_candidates);
  const std::size_t n = b.tables.count();
  const std::size_t n2 = n * n;
  const CandidateId p = b.q.target;
  IlpModel model;
  add_bribery_block(model, b, "b");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      model.add_variable("s_" + std::to_string(i) + "_" + std::to_string(j), 0, b.voters);
    }
  }
  // voters holding o_i after the bribes are the ones that get swapped out of o_i
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LinearTerm> flow;
    for (std::size_t j = 0; j < n; ++j) {
      flow.push_back({n2 + pair_index(i, j, n), 1});
      flow.push_back({pair_index(j, i, n), -1});
    }
    model.add_constraint(std::move(flow), Relation::eq, 0, "flow " + std::to_string(i));
  }
  for (CandidateId c = 0; c < b.tables.m; ++c) {
    if (c == p) continue;
    std::vector<LinearTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) terms.push_back({n2 + pair_index(i, j, n), b.tables.who(p, c, j)});
    }
    model.add_strictly_greater(std::move(terms), 0, "condorcet over " + std::to_string(c));
  }
  std::vector<LinearTerm> cost;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b.tables.switches[i][j] > 0) {
        cost.push_back({n2 + pair_index(i, j, n), static_cast<std::int64_t>(b.tables.switches[i][j])});
      }
    }
  }
  const std::int64_t limit = t > Int(b.voters) * Int(b.tables.m) * Int(b.tables.m) ? b.voters * std::int64_t(b.tables.m * b.tables.m) : to_int64(t);
  model.add_constraint(std::move(cost), Relation::le, limit, "swaps");
  return model;
}

IlpModel build_young_score_bribery_model(const BriberyQuery& query, const Int& t, std::size_t max_candidates) {
  const Base b = prepare(query, max_candidates);
  const std::size_t n = b.tables.count();
  const std::size_t n2 = n * n;
  const CandidateId p = b.q.target;
  IlpModel model;
  add_bribery_block(model, b, "b");
  for (std::size_t i = 0; i < n; ++i) model.add_variable("r_" + std::to_string(i), 0, b.voters);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LinearTerm> have{{n2 + i, 1}};
    for (std::size_t j = 0; j < n; ++j) have.push_back({pair_index(j, i, n), -1});
    model.add_constraint(std::move(have), Relation::le, 0, "remove " + std::to_string(i));
  }
  for (CandidateId c = 0; c < b.tables.m; ++c) {
    if (c == p) continue;
    std::vector<LinearTerm> terms;
    for (std::size_t j = 0; j < n; ++j) {
      const int sign = b.tables.who(p, c, j);
      for (std::size_t i = 0; i < n; ++i) terms.push_back({pair_index(i, j, n), sign});
      terms.push_back({n2 + j, -sign});
    }
    model.add_strictly_greater(std::move(terms), 0, "condorcet over " + std::to_string(c));
  }
  std::vector<LinearTerm> removed;
  for (std::size_t i = 0; i < n; ++i) removed.push_back({n2 + i, 1});
  const std::int64_t limit = t > Int(b.voters) ? b.voters : to_int64(t);
  model.add_constraint(std::move(removed), Relation::le, limit, "removals");
  return model;
}

std::vector<IlpModel> build_kemeny_bribery_models(const BriberyQuery& query, std::size_t max_candidates) {
  require(query.rule.kind == RuleKind::kemeny, "Kemeny models need the Kemeny rule");
  const Base b = prepare(query, max_candidates);
  const std::size_t n = b.tables.count();
  const CandidateId p = b.q.target;
  std::vector<IlpModel> models;
  for (std::size_t h = 0; h < n; ++h) {
    if (b.tables.orders[h].top() != p) continue;
    IlpModel model;
    add_bribery_block(model, b, "b");
    for (std::size_t l = 0; l < n; ++l) {
      if (l == h) continue;
      std::vector<LinearTerm> terms;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t gap = std::int64_t(b.tables.agreements[j][h]) - std::int64_t(b.tables.agreements[j][l]);
        if (gap == 0) continue;
        for (std::size_t i = 0; i < n; ++i) terms.push_back({pair_index(i, j, n), gap});
      }
      const bool strict = b.q.unique() && b.tables.orders[l].top() != p;
      add_condition(model, std::move(terms), strict, "ranking " + std::to_string(h) + " over " + std::to_string(l));
    }
    models.push_back(std::move(model));
  }
  return models;
}

BriberyWitness decode_bribes(const BriberyQuery& q, const OrderTables& tables, const Assignment& x, std::size_t offset) {
  const std::size_t n = tables.count();
  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t k = 0; k < q.election.voters().size(); ++k) {
    holders[order_index(q.election.voters()[k].order())].push_back(k);
  }
  BriberyWitness w;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cursor = 0;
    Int left_in_block = holders[i].empty() ? Int(0) : q.election.voters()[holders[i][0]].multiplicity;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Int want = x.at(offset + pair_index(i, j, n));
      while (want > 0) {
        if (cursor >= holders[i].size()) throw std::invalid_argument("assignment bribes more voters than an order has");
        if (left_in_block == 0) {
          ++cursor;
          if (cursor >= holders[i].size()) continue;
          left_in_block = q.election.voters()[holders[i][cursor]].multiplicity;
          continue;
        }
        const Int take = std::min(want, left_in_block);
        w.bribes.push_back(Bribe{holders[i][cursor], take, Ballot(tables.orders[j])});
        want -= take;
        left_in_block -= take;
      }
    }
  }
  return merged(std::move(w));
}

DodgsonPlan decode_dodgson_plan(const BriberyQuery& query, const Assignment& x) {
  const BriberyQuery q = normalized(query);
  const OrderTables tables(q.election.candidate_count());
  const std::size_t n = tables.count();
  DodgsonPlan plan{decode_bribes(q, tables, x, 0), {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t s = x.at(n * n + pair_index(i, j, n));
      if (i == j || s == 0) continue;
      plan.swaps.push_back({tables.orders[i], tables.orders[j], s, swap_path(tables.orders[i], tables.orders[j])});
    }
  }
  return plan;
}

YoungPlan decode_young_plan(const BriberyQuery& query, const Assignment& x) {
  const BriberyQuery q = normalized(query);
  const OrderTables tables(q.election.candidate_count());
  const std::size_t n = tables.count();
  YoungPlan plan{decode_bribes(q, tables, x, 0), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t r = x.at(n * n + i);
    if (r > 0) plan.removals.emplace_back(tables.orders[i], r);
  }
  return plan;
}

namespace {

// Counts per order after the witness, or nullopt if it is malformed or over budget.
std::optional<std::vector<std::int64_t>> counts_after(const BriberyQuery& query, const BriberyWitness& w,
                                                      const OrderTables& tables) {
  const BriberyQuery q = normalized(query);
  try {
    check_witness_shape(q, w);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (witness_cost(q, w) > q.budget) return std::nullopt;
  return order_counts(apply_witness(q.election, w), tables);
}

}  // namespace

bool check_dodgson_plan(const BriberyQuery& q, const Int& t, const DodgsonPlan& plan) {
  const OrderTables tables(q.election.candidate_count());
  auto counts = counts_after(q, plan.witness, tables);
  if (!counts) return false;
  Int used = 0;
  std::vector<std::int64_t> next = *counts;
  for (const auto& move : plan.swaps) {
    if (move.count <= 0) return false;
    PreferenceOrder cur = move.from;
    for (std::size_t pos : move.positions) {
      if (pos + 1 >= cur.size()) return false;
      cur = cur.swapped(pos);
    }
    if (cur != move.to) return false;
    const std::size_t from = order_index(move.from);
    const std::int64_t count = to_int64(move.count);
    if (next[from] < count) return false;
    next[from] -= count;
    next[order_index(move.to)] += count;
    used += move.count * Int(move.positions.size());
  }
  // every swap must draw on voters that held the source order before swapping
  for (std::size_t i = 0; i < next.size(); ++i) {
    std::int64_t out = 0;
    for (const auto& move : plan.swaps) {
      if (order_index(move.from) == i) out += to_int64(move.count);
    }
    if (out > (*counts)[i]) return false;
  }
  if (used > t) return false;
  return is_condorcet_winner(election_from_counts(q.election, tables, next), q.target);
}

bool check_young_plan(const BriberyQuery& q, const Int& t, const YoungPlan& plan) {
  const OrderTables tables(q.election.candidate_count());
  auto counts = counts_after(q, plan.witness, tables);
  if (!counts) return false;
  Int removed = 0;
  for (const auto& [order, count] : plan.removals) {
    if (count <= 0) return false;
    auto& have = (*counts)[order_index(order)];
    if (have < count) return false;
    have -= to_int64(count);
    removed += count;
  }
  if (removed > t) return false;
  return is_condorcet_winner(election_from_counts(q.election, tables, *counts), q.target);
}

namespace {

BriberyQuery score_query(const Election& e, CandidateId c, const Rule& rule) {
  BriberyQuery q{e, rule, c, 0};
  return q;
}

template <class Feasible>
std::optional<Int> least(std::int64_t hi, Feasible&& feasible) {
  if (!feasible(hi)) return std::nullopt;
  std::int64_t lo = 0;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return Int(lo);
}

std::int64_t voters_of(const Election& e) { return to_int64(e.voter_count()); }

}  // namespace

std::optional<Int> ilp_dodgson_score(const Election& e, CandidateId c) {
  const BriberyQuery q = score_query(e, c, Rule::dodgson());
  const std::int64_t m = std::int64_t(e.candidate_count());
  return least(voters_of(e) * std::max<std::int64_t>(m - 1, 0), [&](std::int64_t t) {
    return ilp_feasible(build_dodgson_score_bribery_model(q, Int(t))).has_value();
  });
}

std::optional<Int> ilp_young_score(const Election& e, CandidateId c) {
  const BriberyQuery q = score_query(e, c, Rule::young());
  return least(voters_of(e), [&](std::int64_t t) {
    return ilp_feasible(build_young_score_bribery_model(q, Int(t))).has_value();
  });
}

bool kemeny_bribery_feasible(const BriberyQuery& q) {
  for (const auto& model : build_kemeny_bribery_models(q)) {
    if (ilp_feasible(model)) return true;
  }
  return false;
}

std::optional<Int> min_bribe_for_score(const BriberyQuery& query, const ScoreGoal& goal) {
  BriberyQuery q = query;
  return least(voters_of(q.election), [&](std::int64_t k) {
    q.budget = k;
    const IlpModel model = goal.kind == ScoreGoal::Kind::dodgson ? build_dodgson_score_bribery_model(q, goal.at_most)
                                                                  : build_young_score_bribery_model(q, goal.at_most);
    return ilp_feasible(model).has_value();
  });
}

std::vector<CandidateId> dodgson_prime_winners(const Election& e) {
  std::vector<std::optional<Int>> cost(e.candidate_count());
  for (CandidateId c = 0; c < e.candidate_count(); ++c) {
    cost[c] = min_bribe_for_score(score_query(e, c, Rule::dodgson()), {ScoreGoal::Kind::dodgson, 0});
  }
  std::optional<Int> best;
  for (const auto& v : cost) {
    if (v && (!best || *v < *best)) best = v;
  }
  std::vector<CandidateId> out;
  for (CandidateId c = 0; c < cost.size(); ++c) {
    if (best && cost[c] == best) out.push_back(c);
  }
  return out;
}

Outcome solve_full_dodgson_or_young_bribery(const BriberyQuery& query, std::size_t max_candidates) {
  query.validate();
  const bool dodgson = query.rule.kind == RuleKind::dodgson;
  require(dodgson || query.rule.kind == RuleKind::young, "needs the Dodgson or Young rule");
  require(!query.weighted, "Dodgson and Young bribery need an unweighted query");
  require(!query.negative, "negative bribery is plurality only");
  const std::size_t m = query.election.candidate_count();
  if (m > max_candidates) {
    throw CapExceeded("integer programs are limited to " + std::to_string(max_candidates) + " candidates");
  }
  const OrderTables tables(m);
  std::map<std::vector<std::size_t>, bool> memo;
  return enumerate_bribery_shapes(query, [&](const std::vector<std::size_t>& counts) {
    auto [it, fresh] = memo.try_emplace(counts, false);
    if (!fresh) return it->second;
    const std::vector<std::int64_t> wide(counts.begin(), counts.end());
    const Election e = election_from_counts(query.election, tables, wide);
    auto score = [&](CandidateId c) { return dodgson ? ilp_dodgson_score(e, c) : ilp_young_score(e, c); };
    const auto mine = score(query.target);
    bool wins = mine.has_value();
    for (CandidateId c = 0; wins && c < m; ++c) {
      if (c == query.target) continue;
      const auto theirs = score(c);
      if (!theirs) continue;
      wins = query.unique() ? *mine < *theirs : *mine <= *theirs;
    }
    it->second = wins;
    return wins;
  });
}

Outcome solve_with_ilp(const BriberyQuery& query) {
  query.validate();
  if (query.rule.positional()) {
    const IlpModel model = build_scoring_bribery_model(query);
    const auto x = ilp_feasible(model);
    if (!x) return std::nullopt;
    const BriberyQuery q = normalized(query);
    return decode_bribes(q, OrderTables(q.election.candidate_count()), *x);
  }
  if (query.rule.kind == RuleKind::kemeny) {
    const BriberyQuery q = normalized(query);
    const OrderTables tables(q.election.candidate_count());
    for (const auto& model : build_kemeny_bribery_models(query)) {
      if (auto x = ilp_feasible(model)) return decode_bribes(q, tables, *x);
    }
    return std::nullopt;
  }
  if (query.rule.kind == RuleKind::dodgson || query.rule.kind == RuleKind::young) {
    return solve_full_dodgson_or_young_bribery(query);
  }
  throw std::invalid_argument("no integer program for rule " + query.rule.name());
}

}  // namespace bribery
