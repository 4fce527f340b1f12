#include "bribery/solvers.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bribery/knapsack.hpp"
#include "bribery/permutations.hpp"

namespace bribery {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

bool target_wins(const ScoreTable& scores, CandidateId p, bool unique) {
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (c == p) continue;
    if (unique ? scores[c] >= scores[p] : scores[c] > scores[p]) return false;
  }
  return true;
}

std::vector<CandidateId> argmax(const ScoreTable& scores) {
  const Int best = *std::max_element(scores.begin(), scores.end());
  std::vector<CandidateId> result;
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (scores[c] == best) result.push_back(c);
  }
  return result;
}

Bribe promote(std::size_t block, std::size_t m, CandidateId to) {
  return Bribe{block, 1, Ballot(order_with_top(m, to))};
}

// Unit indices grouped by the top choice of their ballot.
std::vector<std::vector<std::size_t>> by_top(const Election& e, const std::vector<Unit>& units) {
  std::vector<std::vector<std::size_t>> groups(e.candidate_count());
  for (std::size_t u = 0; u < units.size(); ++u) groups[e.voters()[units[u].block].order().top()].push_back(u);
  return groups;
}

void require_plurality(const BriberyQuery& q) {
  q.validate();
  require(q.rule.kind == RuleKind::plurality, "solver handles plurality only");
}

}  // namespace

Outcome solve_plurality_basic(const BriberyQuery& query) {
  require_plurality(query);
  require(!query.priced && !query.weighted && !query.negative, "basic greedy needs an unpriced, unweighted query");
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  ScoreTable scores = score_table(e, q.rule);
  std::vector<Int> remaining;
  for (const auto& v : e.voters()) remaining.push_back(v.multiplicity);
  BriberyWitness witness;
  Int spent = 0;
  while (!target_wins(scores, p, q.unique())) {
    if (spent >= q.budget) return std::nullopt;
    CandidateId rival = m;
    for (CandidateId c : argmax(scores)) {
      if (c != p) {
        rival = c;
        break;
      }
    }
    std::size_t block = e.voters().size();
    for (std::size_t i = 0; i < e.voters().size(); ++i) {
      if (remaining[i] > 0 && e.voters()[i].order().top() == rival) {
        block = i;
        break;
      }
    }
    if (block == e.voters().size()) return std::nullopt;  // the rival has no voters left to take
    remaining[block] -= 1;
    scores[rival] -= 1;
    scores[p] += 1;
    spent += 1;
    witness.bribes.push_back(promote(block, m, p));
  }
  return merged(std::move(witness));
}

Outcome solve_plurality_priced(const BriberyQuery& query) {
  require_plurality(query);
  require(!query.weighted && !query.negative, "priced sweep needs an unweighted query");
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  const auto units = expand_units(e);
  auto cheaper = [&](std::size_t a, std::size_t b) {
    return std::tie(units[a].price, units[a].block, a) < std::tie(units[b].price, units[b].block, b);
  };
  auto groups = by_top(e, units);
  for (auto& g : groups) std::sort(g.begin(), g.end(), cheaper);
  std::vector<std::size_t> others;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (e.voters()[units[u].block].order().top() != p) others.push_back(u);
  }
  std::sort(others.begin(), others.end(), cheaper);
  if (m == 1) return BriberyWitness{};

  for (std::size_t r = 0; r <= units.size(); ++r) {
    std::vector<bool> chosen(units.size(), false);
    std::size_t p_score = groups[p].size();
    Int cost = 0;
    for (CandidateId c = 0; c < m; ++c) {
      if (c == p || groups[c].size() <= r) continue;
      const std::size_t excess = groups[c].size() - r;
      for (std::size_t i = 0; i < excess; ++i) {
        chosen[groups[c][i]] = true;
        cost += units[groups[c][i]].price;
      }
      p_score += excess;
    }
    const std::size_t goal = q.unique() ? r + 1 : r;
    for (std::size_t i = 0; i < others.size() && p_score < goal; ++i) {
      if (chosen[others[i]]) continue;
      chosen[others[i]] = true;
      cost += units[others[i]].price;
      ++p_score;
    }
    if (p_score < goal || cost > q.budget) continue;
    BriberyWitness witness;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (chosen[u]) witness.bribes.push_back(promote(units[u].block, m, p));
    }
    return merged(std::move(witness));
  }
  return std::nullopt;
}

Outcome solve_plurality_weighted(const BriberyQuery& query) {
  require_plurality(query);
  require(!query.priced && !query.negative, "weighted sweep needs an unpriced query");
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  const ScoreTable scores = score_table(e, q.rule);
  if (target_wins(scores, p, q.unique())) return BriberyWitness{};
  const auto units = expand_units(e);
  auto heavier = [&](std::size_t a, std::size_t b) {
    if (units[a].weight != units[b].weight) return units[a].weight > units[b].weight;
    return a < b;
  };
  auto groups = by_top(e, units);
  for (auto& g : groups) std::sort(g.begin(), g.end(), heavier);
  std::vector<std::size_t> others;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (e.voters()[units[u].block].order().top() != p) others.push_back(u);
  }
  std::sort(others.begin(), others.end(), heavier);

  std::set<Int> thresholds;
  for (CandidateId c = 0; c < m; ++c) {
    if (c == p) continue;
    Int left = scores[c];
    thresholds.insert(left);
    for (std::size_t u : groups[c]) {
      left -= units[u].weight;
      thresholds.insert(left);
    }
  }
  for (const Int& r : thresholds) {
    std::vector<bool> chosen(units.size(), false);
    Int p_score = scores[p];
    Int bribes = 0;
    for (CandidateId c = 0; c < m; ++c) {
      if (c == p) continue;
      Int left = scores[c];
      for (std::size_t i = 0; i < groups[c].size() && left > r; ++i) {
        const std::size_t u = groups[c][i];
        chosen[u] = true;
        left -= units[u].weight;
        p_score += units[u].weight;
        bribes += 1;
      }
    }
    const Int goal = q.unique() ? r + 1 : r;
    for (std::size_t i = 0; i < others.size() && p_score < goal; ++i) {
      if (chosen[others[i]]) continue;
      chosen[others[i]] = true;
      p_score += units[others[i]].weight;
      bribes += 1;
    }
    if (p_score < goal || bribes > q.budget) continue;
    BriberyWitness witness;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (chosen[u]) witness.bribes.push_back(promote(units[u].block, m, p));
    }
    return merged(std::move(witness));
  }
  return std::nullopt;
}

Outcome solve_plurality_negative_priced(const BriberyQuery& query) {
  require_plurality(query);
  require(query.negative && !query.weighted, "negative solver needs an unweighted negative query");
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  const auto units = expand_units(e);
  auto groups = by_top(e, units);
  for (auto& g : groups) {
    std::sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(units[a].price, units[a].block, a) < std::tie(units[b].price, units[b].block, b);
    });
  }
  // Rivals must end at or below `ceiling`.
  const long ceiling = static_cast<long>(groups[p].size()) - (q.unique() ? 1 : 0);
  if (m == 1) return BriberyWitness{};
  if (ceiling < 0) return std::nullopt;
  long surplus = 0;
  long room = 0;
  Int cost = 0;
  for (CandidateId c = 0; c < m; ++c) {
    if (c == p) continue;
    const long s = static_cast<long>(groups[c].size());
    if (s > ceiling) {
      surplus += s - ceiling;
      for (long i = 0; i < s - ceiling; ++i) cost += units[groups[c][static_cast<std::size_t>(i)]].price;
    } else {
      room += ceiling - s;
    }
  }
  if (surplus > room || cost > q.budget) return std::nullopt;

  BriberyWitness witness;
  CandidateId receiver = 0;
  long receiver_room = 0;
  auto next_receiver = [&]() {
    while (receiver_room == 0) {
      ++receiver;
      if (receiver < m && receiver != p && static_cast<long>(groups[receiver].size()) < ceiling) {
        receiver_room = ceiling - static_cast<long>(groups[receiver].size());
      }
    }
  };
  receiver = static_cast<CandidateId>(-1);
  for (CandidateId c = 0; c < m; ++c) {
    if (c == p) continue;
    const long s = static_cast<long>(groups[c].size());
    for (long i = 0; i < s - ceiling; ++i) {
      next_receiver();
      witness.bribes.push_back(promote(units[groups[c][static_cast<std::size_t>(i)]].block, m, receiver));
      --receiver_room;
    }
  }
  return merged(std::move(witness));
}

namespace {

struct PluralityPools {
  std::vector<CandidateId> rivals;
  std::vector<Contender> contenders;  // parallel to rivals
  Int p_score;
  Int total_price;
};

PluralityPools plurality_pools(const BriberyQuery& q, const std::vector<Unit>& units) {
  const Election& e = q.election;
  PluralityPools pools;
  const ScoreTable scores = score_table(e, q.rule);
  pools.p_score = scores[q.target];
  pools.total_price = 0;
  for (const Unit& u : units) pools.total_price += u.price;
  for (CandidateId c = 0; c < e.candidate_count(); ++c) {
    if (c == q.target) continue;
    Contender contender{scores[c], {}};
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (e.voters()[units[i].block].order().top() == c) contender.pool.push_back({units[i].price, units[i].weight, i});
    }
    pools.rivals.push_back(c);
    pools.contenders.push_back(std::move(contender));
  }
  return pools;
}

std::vector<Contender> without(const std::vector<Contender>& all, std::size_t skip) {
  std::vector<Contender> rest;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i != skip) rest.push_back(all[i]);
  }
  return rest;
}

// Promotes the listed units (indices into `units`) of pool item lists.
BriberyWitness promote_items(const std::vector<Unit>& units, std::size_t m, CandidateId p, const VoterPool& pool,
                             const std::vector<std::size_t>& picked, BriberyWitness witness = {}) {
  for (std::size_t i : picked) witness.bribes.push_back(promote(units[pool[i].tag].block, m, p));
  return witness;
}

void require_priced_weighted_plurality(const BriberyQuery& q) {
  require_plurality(q);
  require(q.priced && q.weighted && !q.negative, "solver needs a priced and weighted plurality query");
}

}  // namespace

Outcome solve_plurality_unary_prices(const BriberyQuery& q) {
  require_priced_weighted_plurality(q);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  if (m == 1) return BriberyWitness{};
  const auto units = expand_units(e);
  const PluralityPools pools = plurality_pools(q, units);
  if (q.budget >= pools.total_price) {
    // Everyone votes for p; with zero total weight this need not make p win.
    BriberyWitness all;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (e.voters()[units[i].block].order().top() != p) all.bribes.push_back(promote(units[i].block, m, p));
    }
    all = merged(std::move(all));
    if (is_winner(apply_witness(e, all), q.rule, p, q.unique())) return all;
  }
  const std::size_t k = to_index(q.budget < pools.total_price ? q.budget : pools.total_price);
  for (std::size_t ci = 0; ci < pools.rivals.size(); ++ci) {
    const Contender& pivot = pools.contenders[ci];
    const auto rest = without(pools.contenders, ci);
    const DpTable own = heaviest_table(pivot.pool, k);
    for (std::size_t b = 0; b <= k; ++b) {
      const Int gained = *own.at(b);
      const Int r = pivot.score - gained;
      const auto others = Heaviest_with_selection(rest, Int(k - b), r);
      if (!others) continue;
      const Int final_p = pools.p_score + others->first + gained;
      if (q.unique() ? final_p <= r : final_p < r) continue;
      BriberyWitness witness = promote_items(units, m, p, pivot.pool, heaviest_subset(pivot.pool, Int(b)));
      for (std::size_t j = 0; j < rest.size(); ++j) {
        witness = promote_items(units, m, p, rest[j].pool, others->second[j], std::move(witness));
      }
      return merged(std::move(witness));
    }
  }
  return std::nullopt;
}

Outcome solve_plurality_unary_weights(const BriberyQuery& q) {
  require_priced_weighted_plurality(q);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  if (m == 1) return BriberyWitness{};
  const auto units = expand_units(e);
  const PluralityPools pools = plurality_pools(q, units);
  for (std::size_t ci = 0; ci < pools.rivals.size(); ++ci) {
    const Contender& pivot = pools.contenders[ci];
    const auto rest = without(pools.contenders, ci);
    const DpTable own = cheapest_table(pivot.pool);
    for (std::size_t w = 0; w < own.size(); ++w) {
      const Int b = *own.at(w);
      const Int r = pivot.score - w;
      const Int need = (q.unique() ? r + 1 : r) - (pools.p_score + w);
      const auto others = Cheapest_with_selection(rest, need, r);
      if (!others || b + others->first > q.budget) continue;
      BriberyWitness witness = promote_items(units, m, p, pivot.pool, *cheapest_subset(pivot.pool, Int(w)));
      for (std::size_t j = 0; j < rest.size(); ++j) {
        witness = promote_items(units, m, p, rest[j].pool, others->second[j], std::move(witness));
      }
      return merged(std::move(witness));
    }
  }
  return std::nullopt;
}

namespace {

struct FlipSetup {
  std::vector<Unit> units;
  VoterPool gain;                     // non-approvers of p, priced by their p entry
  std::vector<VoterPool> strip;       // per candidate, its approvers priced by that entry
  ScoreTable scores;
};

FlipSetup flip_setup(const BriberyQuery& q) {
  q.validate();
  require(q.approval_flip && q.rule.kind == RuleKind::approval, "solver needs an approval flip query");
  require(q.priced && q.weighted, "solver needs a priced and weighted flip query");
  const Election& e = q.election;
  FlipSetup s;
  s.units = expand_units(e);
  s.scores = score_table(e, q.rule);
  s.strip.resize(e.candidate_count());
  for (std::size_t i = 0; i < s.units.size(); ++i) {
    const VoterBlock& v = e.voters()[s.units[i].block];
    for (CandidateId c = 0; c < e.candidate_count(); ++c) {
      if (v.approvals().approves(c)) {
        s.strip[c].push_back({v.entry_price(c), v.weight, i});
      } else if (c == q.target) {
        s.gain.push_back({v.entry_price(c), v.weight, i});
      }
    }
  }
  return s;
}

BriberyWitness flips_to_witness(const FlipSetup& s, const std::vector<FlipSet>& per_unit) {
  BriberyWitness witness;
  for (std::size_t i = 0; i < per_unit.size(); ++i) {
    if (per_unit[i].empty()) continue;
    FlipSet flips = per_unit[i];
    std::sort(flips.begin(), flips.end());
    witness.bribes.push_back(Bribe{s.units[i].block, 1, flips});
  }
  return merged(std::move(witness));
}

// Strips rivals down to `r` (below r in unique mode) after p reached score r.
// Returns the flips or nullopt if the remaining budget does not cover it.
std::optional<BriberyWitness> finish_flips(const BriberyQuery& q, const FlipSetup& s, const Int& r, Int left,
                                           const std::vector<std::size_t>& gained) {
  std::vector<FlipSet> per_unit(s.units.size());
  for (std::size_t i : gained) per_unit[s.gain[i].tag].push_back(q.target);
  const Int limit = q.unique() ? r - 1 : r;
  for (CandidateId c = 0; c < s.scores.size(); ++c) {
    if (c == q.target || s.scores[c] <= limit) continue;
    const auto price = cheapest(s.strip[c], s.scores[c] - limit);
    if (!price) return std::nullopt;
    left -= *price;
    if (left < 0) return std::nullopt;
    const auto stripped = cheapest_subset(s.strip[c], s.scores[c] - limit);
    for (std::size_t i : *stripped) per_unit[s.strip[c][i].tag].push_back(c);
  }
  return flips_to_witness(s, per_unit);
}

std::optional<BriberyWitness> flip_everything(const BriberyQuery& q, const FlipSetup& s) {
  std::vector<FlipSet> per_unit(s.units.size());
  for (const Item& item : s.gain) per_unit[item.tag].push_back(q.target);
  for (CandidateId c = 0; c < s.scores.size(); ++c) {
    if (c == q.target) continue;
    for (const Item& item : s.strip[c]) per_unit[item.tag].push_back(c);
  }
  BriberyWitness all = flips_to_witness(s, per_unit);
  if (witness_cost(q, all) > q.budget) return std::nullopt;
  if (!is_winner(apply_witness(q.election, all), q.rule, q.target, q.unique())) return std::nullopt;
  return all;
}

}  // namespace

Outcome solve_approval_flip_unary_prices(const BriberyQuery& q) {
  const FlipSetup s = flip_setup(q);
  if (auto all = flip_everything(q, s)) return all;
  const Int useful = total_price(s.gain);
  const std::size_t k = to_index(q.budget < useful ? q.budget : useful);
  const DpTable gains = heaviest_table(s.gain, k);
  for (std::size_t b = 0; b <= k; ++b) {
    const Int r = s.scores[q.target] + *gains.at(b);
    if (auto w = finish_flips(q, s, r, q.budget - b, heaviest_subset(s.gain, Int(b)))) return w;
  }
  return std::nullopt;
}

Outcome solve_approval_flip_unary_weights(const BriberyQuery& q) {
  const FlipSetup s = flip_setup(q);
  if (auto all = flip_everything(q, s)) return all;
  const DpTable costs = cheapest_table(s.gain);
  for (std::size_t w = 0; w < costs.size(); ++w) {
    const Int b = *costs.at(w);
    if (b > q.budget) continue;
    const Int r = s.scores[q.target] + w;
    if (auto found = finish_flips(q, s, r, q.budget - b, *cheapest_subset(s.gain, Int(w)))) return found;
  }
  return std::nullopt;
}

Outcome solve_approval_flip(const BriberyQuery& q) {
  return q.weights_unary ? solve_approval_flip_unary_weights(q) : solve_approval_flip_unary_prices(q);
}

namespace {

struct OrderGroups {
  std::vector<PreferenceOrder> orders;
  std::vector<std::vector<std::size_t>> members;  // unit indices per order
};

OrderGroups group_by_order(const Election& e, const std::vector<Unit>& units) {
  OrderGroups g;
  g.orders = all_orders(e.candidate_count());
  g.members.resize(g.orders.size());
  for (std::size_t u = 0; u < units.size(); ++u) g.members[order_index(e.voters()[units[u].block].order())].push_back(u);
  return g;
}

void require_positional(const BriberyQuery& q, std::size_t max_candidates) {
  q.validate();
  require(q.rule.positional(), "solver needs a positional scoring rule");
  require(!q.negative, "negative bribery is not handled by this solver");
  if (q.election.candidate_count() > max_candidates) {
    throw CapExceeded("order enumeration is limited to " + std::to_string(max_candidates) + " candidates");
  }
}

// Score of each candidate when order j is cast with weight counts[j].
template <class Count>
ScoreTable scores_for(const OrderGroups& g, const ScoringProtocol& alpha, const std::vector<Count>& counts) {
  ScoreTable scores(alpha.size(), 0);
  for (std::size_t j = 0; j < g.orders.size(); ++j) {
    if (counts[j] == 0) continue;
    for (std::size_t pos = 0; pos < alpha.size(); ++pos) scores[g.orders[j].at(pos)] += alpha[pos] * Int(counts[j]);
  }
  return scores;
}

// Calls visit(d) for every d with d.size() == parts and sum == total; stops when visit returns true.
template <class Visit>
bool compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& d, Visit&& visit) {
  if (d.size() + 1 == parts) {
    d.push_back(total);
    const bool done = visit(d);
    d.pop_back();
    return done;
  }
  for (std::size_t x = 0; x <= total; ++x) {
    d.push_back(x);
    const bool done = compositions(total - x, parts, d, visit);
    d.pop_back();
    if (done) return true;
  }
  return false;
}

}  // namespace

Outcome enumerate_bribery_shapes(const BriberyQuery& query, const std::function<bool(const std::vector<std::size_t>&)>& accept) {
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const auto units = expand_units(e, 64);
  OrderGroups g = group_by_order(e, units);
  for (auto& members : g.members) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(units[a].price, units[a].block, a) < std::tie(units[b].price, units[b].block, b);
    });
  }
  const std::size_t n_orders = g.orders.size();
  std::vector<std::size_t> taken(n_orders, 0);
  while (true) {
    Int cost = 0;
    std::size_t moved = 0;
    for (std::size_t i = 0; i < n_orders; ++i) {
      for (std::size_t t = 0; t < taken[i]; ++t) cost += units[g.members[i][t]].price;
      moved += taken[i];
    }
    if (cost <= q.budget) {
      std::vector<std::size_t> d;
      std::vector<std::size_t> found;
      compositions(moved, n_orders, d, [&](const std::vector<std::size_t>& to) {
        std::vector<std::size_t> counts(n_orders);
        for (std::size_t j = 0; j < n_orders; ++j) counts[j] = g.members[j].size() - taken[j] + to[j];
        if (!accept(counts)) return false;
        found = to;
        return true;
      });
      if (!found.empty()) {
        BriberyWitness witness;
        std::size_t dest = 0;
        for (std::size_t i = 0; i < n_orders; ++i) {
          for (std::size_t t = 0; t < taken[i]; ++t) {
            while (found[dest] == 0) ++dest;
            --found[dest];
            if (dest != i) witness.bribes.push_back(Bribe{units[g.members[i][t]].block, 1, Ballot(g.orders[dest])});
          }
        }
        return merged(std::move(witness));
      }
    }
    std::size_t i = 0;
    for (; i < n_orders; ++i) {
      if (++taken[i] <= g.members[i].size()) break;
      taken[i] = 0;
    }
    if (i == n_orders) return std::nullopt;
  }
}

Outcome solve_scoring_priced(const BriberyQuery& query, std::size_t max_candidates) {
  require_positional(query, max_candidates);
  require(!query.weighted, "priced enumeration needs an unweighted query");
  const std::size_t m = query.election.candidate_count();
  const ScoringProtocol alpha = query.rule.protocol_for(m);
  const OrderGroups g{all_orders(m), {}};
  return enumerate_bribery_shapes(query, [&](const std::vector<std::size_t>& counts) {
    return target_wins(scores_for(g, alpha, counts), query.target, query.unique());
  });
}

namespace {

using WeightVector = std::vector<std::size_t>;

// layers[l] maps a weight vector to (cost, order chosen for voter l); the
// voters l.. are exactly those that contributed. layers[t] is the boundary.
using Layer = std::map<WeightVector, std::pair<Int, std::size_t>>;

std::vector<Layer> split_layers(const std::vector<Unit>& voters, std::size_t own_order, std::size_t order_count,
                                const std::optional<Int>& limit) {
  const std::size_t t = voters.size();
  std::vector<Layer> layers(t + 1);
  layers[t][WeightVector(order_count, 0)] = {Int(0), order_count};
  for (std::size_t l = t; l-- > 0;) {
    const std::size_t weight = to_index(voters[l].weight);
    for (const auto& [w, entry] : layers[l + 1]) {
      for (std::size_t j = 0; j < order_count; ++j) {
        WeightVector next = w;
        next[j] += weight;
        const Int cost = entry.first + (j == own_order ? Int(0) : voters[l].price);
        if (limit && cost > *limit) continue;
        auto [it, inserted] = layers[l].try_emplace(std::move(next), cost, j);
        if (!inserted && cost < it->second.first) it->second = {cost, j};
      }
    }
  }
  return layers;
}

}  // namespace

std::map<std::vector<std::size_t>, Int> split_costs(const std::vector<Unit>& voters, std::size_t own_order,
                                                    std::size_t order_count) {
  const auto layers = split_layers(voters, own_order, order_count, std::nullopt);
  std::map<std::vector<std::size_t>, Int> result;
  for (const auto& [w, entry] : layers.front()) result.emplace(w, entry.first);
  return result;
}

Outcome solve_scoring_unary_weights(const BriberyQuery& query, std::size_t max_candidates) {
  require_positional(query, max_candidates);
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const ScoringProtocol alpha = q.rule.protocol_for(m);
  const auto units = expand_units(e, 64);
  const OrderGroups g = group_by_order(e, units);
  const std::size_t n_orders = g.orders.size();

  std::vector<std::size_t> present;
  std::vector<std::vector<Unit>> voters_of;
  std::vector<std::vector<Layer>> layers;
  for (std::size_t i = 0; i < n_orders; ++i) {
    if (g.members[i].empty()) continue;
    std::vector<Unit> vs;
    for (std::size_t u : g.members[i]) vs.push_back(units[u]);
    present.push_back(i);
    layers.push_back(split_layers(vs, i, n_orders, q.budget));
    voters_of.push_back(std::move(vs));
  }

  // stages[s] maps the summed targets of the first s present orders to
  // (cost, the split chosen for order s-1).
  std::vector<std::map<WeightVector, std::pair<Int, WeightVector>>> stages(present.size() + 1);
  stages[0][WeightVector(n_orders, 0)] = {Int(0), {}};
  for (std::size_t s = 0; s < present.size(); ++s) {
    for (const auto& [total, entry] : stages[s]) {
      for (const auto& [split, cell] : layers[s].front()) {
        const Int cost = entry.first + cell.first;
        if (cost > q.budget) continue;
        WeightVector next = total;
        for (std::size_t j = 0; j < n_orders; ++j) next[j] += split[j];
        auto [it, inserted] = stages[s + 1].try_emplace(std::move(next), cost, split);
        if (!inserted && cost < it->second.first) it->second = {cost, split};
      }
    }
  }
  for (const auto& [total, entry] : stages.back()) {
    if (!target_wins(scores_for(g, alpha, total), q.target, q.unique())) continue;
    BriberyWitness witness;
    WeightVector remaining = total;
    for (std::size_t s = present.size(); s-- > 0;) {
      WeightVector split = stages[s + 1].at(remaining).second;
      for (std::size_t j = 0; j < n_orders; ++j) remaining[j] -= split[j];
      for (std::size_t l = 0; l < voters_of[s].size(); ++l) {
        const std::size_t j = layers[s][l].at(split).second;
        if (j != present[s]) witness.bribes.push_back(Bribe{voters_of[s][l].block, 1, Ballot(g.orders[j])});
        split[j] -= to_index(voters_of[s][l].weight);
      }
    }
    return merged(std::move(witness));
  }
  return std::nullopt;
}

Outcome solve_veto(const BriberyQuery& query) {
  query.validate();
  require(query.rule.kind == RuleKind::veto, "solver handles veto only");
  require(!query.priced && !query.weighted, "veto greedy needs an unpriced, unweighted query");
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const CandidateId p = q.target;
  if (m == 1) return BriberyWitness{};
  const auto units = expand_units(e);
  std::vector<std::vector<std::size_t>> vetoers(m);
  for (std::size_t u = 0; u < units.size(); ++u) vetoers[e.voters()[units[u].block].order().bottom()].push_back(u);
  auto count = [&](CandidateId c) { return vetoers[c].size(); };
  auto done = [&]() {
    for (CandidateId c = 0; c < m; ++c) {
      if (c != p && (q.unique() ? count(c) <= count(p) : count(c) < count(p))) return false;
    }
    return true;
  };
  auto least_vetoed_rival = [&]() {
    CandidateId best = m;
    for (CandidateId c = 0; c < m; ++c) {
      if (c != p && (best == m || count(c) < count(best))) best = c;
    }
    return best;
  };
  BriberyWitness witness;
  Int spent = 0;
  // Most vetoed rival first when p itself is clean, so the greedy can still
  // separate p from rivals tied with it at zero.
  while (!done()) {
    if (spent >= q.budget) return std::nullopt;
    CandidateId source = p;
    if (count(p) == 0) {
      for (CandidateId c = 0; c < m; ++c) {
        if (c != p && (source == p || count(c) > count(source))) source = c;
      }
      if (count(source) < 2) return std::nullopt;
    }
    const CandidateId sink = least_vetoed_rival();
    std::sort(vetoers[source].begin(), vetoers[source].end());
    const std::size_t u = vetoers[source].front();
    vetoers[source].erase(vetoers[source].begin());
    vetoers[sink].push_back(u);
    witness.bribes.push_back(Bribe{units[u].block, 1, Ballot(order_with_top_and_bottom(m, p, sink))});
    spent += 1;
  }
  return merged(std::move(witness));
}

DichotomyVerdict classify_dichotomy(const ScoringProtocol& alpha, const BriberyVariant& variant) {
  auto verdict = [](bool easy, const char* why) {
    return DichotomyVerdict{easy ? Complexity::polynomial : Complexity::np_complete, why};
  };
  if (!variant.weighted) {
    return verdict(true, variant.priced ? "unweighted priced: per-order bribe enumeration" : "unweighted: per-order bribe enumeration");
  }
  if (variant.unary == Unary::weights) return verdict(true, "unary weights: per-order weight split dynamic program");
  if (!variant.priced || variant.unary == Unary::prices) {
    return verdict(alpha.tail_constant(), alpha.tail_constant() ? "weighted: plurality-like protocol"
                                                                 : "weighted: alpha_2..alpha_m not all equal");
  }
  return verdict(alpha.constant(), alpha.constant() ? "weighted and priced: all candidates always tied"
                                                     : "weighted and priced: alpha_1 > alpha_m");
}

}  // namespace bribery
