#include "bribery/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bribery/permutations.hpp"

namespace bribery {

namespace {

std::vector<Int> ballot_key(std::size_t m, const Rule& rule, const Ballot& ballot) {
  std::vector<Int> key(m, 0);
  if (const auto* approvals = std::get_if<ApprovalVector>(&ballot)) {
    for (CandidateId c = 0; c < m; ++c) key[c] = approvals->approves(c) ? 1 : 0;
    return key;
  }
  const auto& order = std::get<PreferenceOrder>(ballot);
  if (rule.positional()) {
    const ScoringProtocol alpha = rule.protocol_for(m);
    for (std::size_t pos = 0; pos < m; ++pos) key[order.at(pos)] = alpha[pos];
  } else {
    for (std::size_t pos = 0; pos < m; ++pos) key[pos] = order.at(pos);
  }
  return key;
}

// Points a ballot gives each candidate under a score-based rule (unweighted).
std::vector<Int> contribution(std::size_t m, const Rule& rule, const Ballot& ballot) {
  if (rule.kind == RuleKind::approval) return ballot_key(m, rule, ballot);
  const ScoringProtocol alpha = rule.protocol_for(m);
  std::vector<Int> points(m, 0);
  const auto& order = std::get<PreferenceOrder>(ballot);
  for (std::size_t pos = 0; pos < m; ++pos) points[order.at(pos)] = alpha[pos];
  return points;
}

void check_caps(const Election& e, Int extra_voters, const OracleBudget& caps) {
  if (e.candidate_count() > caps.max_candidates) {
    throw CapExceeded("oracle is limited to " + std::to_string(caps.max_candidates) + " candidates");
  }
  if (e.voter_count() + extra_voters > caps.max_voters) {
    throw CapExceeded("oracle is limited to " + std::to_string(caps.max_voters) + " voters");
  }
}

bool wins(const ScoreTable& scores, CandidateId p, bool unique) {
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (c == p) continue;
    if (unique ? scores[c] >= scores[p] : scores[c] > scores[p]) return false;
  }
  return true;
}

struct Choice {
  std::variant<Ballot, FlipSet> replacement;
  Ballot result;
  Int unit_cost;
  std::vector<Int> delta;  // weighted score change per bribed voter
};

struct SearchBlock {
  Ballot original;
  Int weight;
  std::size_t multiplicity;
  std::vector<Choice> choices;
};

using Profile = std::map<std::pair<Ballot, Int>, Int>;

class Search {
 public:
  using Test = std::function<bool(const Election&)>;

  // `test` is used for rules without a score table; score-based rules are
  // checked incrementally.
  Search(const BriberyQuery& q, Test test, const OracleBudget& caps) : q_(normalized(q)), test_(std::move(test)), caps_(caps) {
    const Election& e = q_.election;
    const std::size_t m = e.candidate_count();
    incremental_ = !test_ && q_.rule.score_based();
    if (incremental_) scores_ = score_table(e, q_.rule);
    std::vector<Ballot> menu;
    if (!q_.approval_flip) {
      menu = distinct_ballots(m, q_.rule, [&](const Ballot& b) {
        return !(q_.negative && std::get<PreferenceOrder>(b).top() == q_.target);
      });
    }
    for (const VoterBlock& v : e.voters()) {
      SearchBlock block{v.ballot, v.weight, to_index(v.multiplicity, caps.max_voters), {}};
      const auto own_key = ballot_key(m, q_.rule, v.ballot);
      auto add = [&](std::variant<Ballot, FlipSet> replacement, Ballot result, Int cost) {
        Choice choice{std::move(replacement), std::move(result), std::move(cost), {}};
        if (incremental_) {
          const auto before = contribution(m, q_.rule, v.ballot);
          const auto after = contribution(m, q_.rule, choice.result);
          for (CandidateId c = 0; c < m; ++c) choice.delta.push_back(v.weight * (after[c] - before[c]));
        }
        block.choices.push_back(std::move(choice));
      };
      if (q_.approval_flip) {
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
          FlipSet flips;
          Int cost = 0;
          for (CandidateId c = 0; c < m; ++c) {
            if (mask & (std::size_t{1} << c)) {
              flips.push_back(c);
              cost += v.entry_price(c);
            }
          }
          add(flips, Ballot(v.approvals().flipped(flips)), cost);
        }
      } else {
        for (const Ballot& b : menu) {
          if (ballot_key(m, q_.rule, b) != own_key) add(b, b, v.price);
        }
      }
      std::stable_sort(block.choices.begin(), block.choices.end(),
                       [](const Choice& x, const Choice& y) { return x.unit_cost < y.unit_cost; });
      blocks_.push_back(std::move(block));
    }
    taken_.resize(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) taken_[i].assign(blocks_[i].choices.size(), 0);
    prepare_bounds();
  }

  std::optional<BriberyWitness> run() {
    descend(0, 0, blocks_.empty() ? 0 : blocks_[0].multiplicity, Int(0));
    if (!best_cost_) return std::nullopt;
    BriberyWitness witness;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (std::size_t o = 0; o < blocks_[i].choices.size(); ++o) {
        if (best_[i][o] > 0) witness.bribes.push_back(Bribe{i, Int(best_[i][o]), blocks_[i].choices[o].replacement});
      }
    }
    return witness;
  }

 private:
  // Each level either closes block b or bribes one more of its voters with a
  // choice at index >= o, so every multiset of bribes is visited once.
  void descend(std::size_t b, std::size_t o, std::size_t left, const Int& cost) {
    if (++nodes_ > caps_.max_nodes) throw CapExceeded("oracle search exceeded its node limit");
    if (best_cost_ && cost >= *best_cost_) return;
    if (b == blocks_.size()) {
      if (accepts()) {
        best_cost_ = cost;
        best_ = taken_;
      }
      return;
    }
    if (hopeless(b, left, cost)) return;
    if (!affordable(b, cost)) {
      descend(blocks_.size(), 0, 0, cost);
      return;
    }
    const std::size_t next = b + 1 < blocks_.size() ? blocks_[b + 1].multiplicity : 0;
    descend(b + 1, 0, next, cost);
    if (left == 0) return;
    const SearchBlock& block = blocks_[b];
    for (std::size_t c = o; c < block.choices.size(); ++c) {
      const Choice& choice = block.choices[c];
      const Int total = cost + choice.unit_cost;
      if (total > q_.budget) break;  // choices are sorted by cost
      if (best_cost_ && total >= *best_cost_) break;
      shift(choice, 1);
      ++taken_[b][c];
      descend(b, c, left - 1, total);
      --taken_[b][c];
      shift(choice, -1);
    }
  }

  // Suffix tables over blocks b.. : cheapest unit bribe, voter count, and
  // per rival the largest gain of the target over it from one bribed voter.
  void prepare_bounds() {
    const std::size_t n = blocks_.size();
    const std::size_t m = q_.election.candidate_count();
    cheapest_.assign(n + 1, std::nullopt);
    units_after_.assign(n + 1, 0);
    gain_.assign(n + 1, std::vector<Int>(m, 0));
    for (std::size_t b = n; b-- > 0;) {
      cheapest_[b] = cheapest_[b + 1];
      units_after_[b] = units_after_[b + 1] + (b + 1 < n ? blocks_[b + 1].multiplicity : 0);
      gain_[b] = gain_[b + 1];
      for (const Choice& choice : blocks_[b].choices) {
        if (!cheapest_[b] || choice.unit_cost < *cheapest_[b]) cheapest_[b] = choice.unit_cost;
        if (!incremental_) continue;
        for (CandidateId c = 0; c < m; ++c) {
          gain_[b][c] = std::max(gain_[b][c], Int(choice.delta[q_.target] - choice.delta[c]));
        }
      }
    }
  }

  bool affordable(std::size_t b, const Int& cost) const { return cheapest_[b] && cost + *cheapest_[b] <= q_.budget; }

  // True when even the best remaining bribes cannot lift the target past
  // some rival.
  bool hopeless(std::size_t b, std::size_t left, const Int& cost) const {
    if (!incremental_) return false;
    Int units = Int(left + units_after_[b]);
    if (!affordable(b, cost)) {
      units = 0;
    } else if (*cheapest_[b] > 0) {
      units = std::min(units, Int((q_.budget - cost) / *cheapest_[b]));
    }
    const CandidateId p = q_.target;
    for (CandidateId c = 0; c < scores_.size(); ++c) {
      if (c == p) continue;
      const Int reach = scores_[p] + units * gain_[b][c];
      if (q_.unique() ? scores_[c] >= reach : scores_[c] > reach) return true;
    }
    return false;
  }

  void shift(const Choice& choice, long count) {
    if (!incremental_ || count == 0) return;
    for (std::size_t c = 0; c < scores_.size(); ++c) scores_[c] += choice.delta[c] * count;
  }

  bool accepts() {
    if (incremental_) return wins(scores_, q_.target, q_.unique());
    Profile profile;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      std::size_t left = blocks_[i].multiplicity;
      for (std::size_t o = 0; o < blocks_[i].choices.size(); ++o) {
        if (taken_[i][o] == 0) continue;
        profile[{blocks_[i].choices[o].result, blocks_[i].weight}] += taken_[i][o];
        left -= taken_[i][o];
      }
      if (left > 0) profile[{blocks_[i].original, blocks_[i].weight}] += left;
    }
    auto memo = memo_.find(profile);
    if (memo != memo_.end()) return memo->second;
    std::vector<VoterBlock> voters;
    for (const auto& [key, count] : profile) {
      VoterBlock v;
      v.ballot = key.first;
      v.weight = key.second;
      v.multiplicity = count;
      voters.push_back(std::move(v));
    }
    const bool ok = test_(q_.election.with_voters(std::move(voters)));
    memo_.emplace(std::move(profile), ok);
    return ok;
  }

  BriberyQuery q_;
  Test test_;
  OracleBudget caps_;
  bool incremental_ = false;
  ScoreTable scores_;
  std::vector<SearchBlock> blocks_;
  std::vector<std::vector<std::size_t>> taken_;
  std::vector<std::vector<std::size_t>> best_;
  std::optional<Int> best_cost_;
  std::map<Profile, bool> memo_;
  std::size_t nodes_ = 0;
  std::vector<std::optional<Int>> cheapest_;
  std::vector<std::size_t> units_after_;
  std::vector<std::vector<Int>> gain_;
};

}  // namespace

std::vector<Ballot> distinct_ballots(std::size_t m, const Rule& rule, const std::function<bool(const Ballot&)>& allowed) {
  std::vector<Ballot> all;
  if (rule.ballot_kind() == BallotKind::approvals) {
    if (m >= 20) throw CapExceeded("too many approval vectors to enumerate");
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<bool> bits(m);
      for (CandidateId c = 0; c < m; ++c) bits[c] = (mask >> c) & 1U;
      all.emplace_back(ApprovalVector(std::move(bits)));
    }
  } else {
    for (auto& order : all_orders(m)) all.emplace_back(std::move(order));
  }
  std::vector<Ballot> result;
  std::set<std::vector<Int>> seen;
  for (auto& b : all) {
    if (allowed && !allowed(b)) continue;
    if (seen.insert(ballot_key(m, rule, b)).second) result.push_back(std::move(b));
  }
  return result;
}

std::optional<BriberyWitness> oracle_bribery(const BriberyQuery& q, const OracleBudget& caps) {
  q.validate();
  check_caps(q.election, 0, caps);
  Search::Test test;
  if (!q.rule.score_based()) {
    test = [&](const Election& e) { return is_winner(e, q.rule, q.target, q.unique()); };
  }
  return Search(q, test, caps).run();
}

std::optional<BriberyWitness> oracle_score_bribery(const BriberyQuery& q, const ScoreGoal& goal, const OracleBudget& caps) {
  q.validate();
  if (q.election.kind() != BallotKind::orders) throw std::invalid_argument("score bribery needs preference orders");
  check_caps(q.election, 0, caps);
  Search::Test test = [&](const Election& e) {
    const auto score = goal.kind == ScoreGoal::Kind::dodgson ? dodgson_score(e, q.target) : young_score(e, q.target);
    return score && *score <= goal.at_most;
  };
  return Search(q, test, caps).run();
}

bool verify_witness(const BriberyQuery& q, const BriberyWitness& w) {
  q.validate();
  check_witness_shape(q, w);
  if (witness_cost(q, w) > q.budget) return false;
  if (q.negative) {
    for (const Bribe& b : w.bribes) {
      if (std::get<PreferenceOrder>(std::get<Ballot>(b.replacement)).top() == q.target) return false;
    }
  }
  const BriberyQuery n = normalized(q);
  return is_winner(apply_witness(n.election, w), q.rule, q.target, q.unique());
}

bool verify_score_witness(const BriberyQuery& q, const ScoreGoal& goal, const BriberyWitness& w) {
  q.validate();
  check_witness_shape(q, w);
  if (witness_cost(q, w) > q.budget) return false;
  const Election after = apply_witness(normalized(q).election, w);
  const auto score = goal.kind == ScoreGoal::Kind::dodgson ? dodgson_score(after, q.target) : young_score(after, q.target);
  return score && *score <= goal.at_most;
}

std::optional<std::vector<Ballot>> oracle_manipulation(const ManipulationQuery& q, const OracleBudget& caps) {
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  if (q.target >= m) throw std::invalid_argument("target candidate out of range");
  if (e.kind() != q.rule.ballot_kind()) throw std::invalid_argument("rule does not match the ballot kind");
  for (const Int& w : q.manipulators) {
    if (w < 0) throw std::invalid_argument("negative manipulator weight");
  }
  check_caps(e, Int(q.manipulators.size()), caps);
  const auto menu = distinct_ballots(m, q.rule);
  // Manipulators of equal weight are interchangeable: pick nondecreasing menu indices.
  std::vector<std::size_t> by_weight(q.manipulators.size());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [&](std::size_t a, std::size_t b) { return q.manipulators[a] < q.manipulators[b]; });
  std::vector<std::size_t> pick(by_weight.size(), 0);
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> descend = [&](std::size_t i) -> bool {
    if (++nodes > caps.max_nodes) throw CapExceeded("manipulation search exceeded its node limit");
    if (i == by_weight.size()) {
      std::vector<VoterBlock> voters = e.voters();
      for (std::size_t j = 0; j < by_weight.size(); ++j) {
        VoterBlock v;
        v.ballot = menu[pick[j]];
        v.weight = q.manipulators[by_weight[j]];
        voters.push_back(std::move(v));
      }
      return is_winner(e.with_voters(std::move(voters)), q.rule, q.target, q.unique());
    }
    const bool same_as_previous = i > 0 && q.manipulators[by_weight[i]] == q.manipulators[by_weight[i - 1]];
    for (std::size_t o = same_as_previous ? pick[i - 1] : 0; o < menu.size(); ++o) {
      pick[i] = o;
      if (descend(i + 1)) return true;
    }
    return false;
  };
  if (!descend(0)) return std::nullopt;
  std::vector<Ballot> ballots(q.manipulators.size());
  for (std::size_t j = 0; j < by_weight.size(); ++j) ballots[by_weight[j]] = menu[pick[j]];
  return ballots;
}

}  // namespace bribery
