#include "bribery/query.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bribery {

void BriberyQuery::validate() const {
  if (target >= election.candidate_count()) throw std::invalid_argument("target candidate out of range");
  if (budget < 0) throw std::invalid_argument("negative budget");
  if (election.kind() != rule.ballot_kind()) throw std::invalid_argument("rule does not match the ballot kind");
  if (negative && rule.kind != RuleKind::plurality) throw std::invalid_argument("negative bribery is defined for plurality only");
  if (approval_flip && rule.kind != RuleKind::approval) throw std::invalid_argument("flip bribery needs the approval rule");
  if (rule.positional()) rule.protocol_for(election.candidate_count());
}

std::string BriberyQuery::describe() const {
  std::string text = rule.name() + " target=" + election.name(target) + " budget=" + to_string(budget);
  if (priced) text += " priced";
  if (weighted) text += " weighted";
  if (negative) text += " negative";
  if (approval_flip) text += " flip";
  if (unique()) text += " unique";
  return text;
}

BriberyQuery normalized(const BriberyQuery& q) {
  if (q.priced && q.weighted) return q;
  std::vector<VoterBlock> voters = q.election.voters();
  for (VoterBlock& v : voters) {
    if (!q.priced) {
      v.price = 1;
      v.entry_prices.clear();
    }
    if (!q.weighted) v.weight = 1;
  }
  BriberyQuery result = q;
  result.election = q.election.with_voters(std::move(voters));
  return result;
}

Int BriberyWitness::bribed_voters() const {
  Int total = 0;
  for (const Bribe& b : bribes) total += b.count;
  return total;
}

void check_witness_shape(const BriberyQuery& q, const BriberyWitness& w) {
  const auto& voters = q.election.voters();
  const std::size_t m = q.election.candidate_count();
  std::map<std::size_t, Int> taken;
  for (const Bribe& b : w.bribes) {
    if (b.block >= voters.size()) throw std::invalid_argument("bribe names a missing voter block");
    if (b.count < 1) throw std::invalid_argument("bribe count must be positive");
    taken[b.block] += b.count;
    if (taken[b.block] > voters[b.block].multiplicity) throw std::invalid_argument("bribe takes more voters than the block holds");
    if (q.approval_flip) {
      const FlipSet* flips = std::get_if<FlipSet>(&b.replacement);
      if (flips == nullptr) throw std::invalid_argument("flip bribery expects entry-flip sets");
      std::set<CandidateId> distinct(flips->begin(), flips->end());
      if (distinct.size() != flips->size()) throw std::invalid_argument("repeated entry in flip set");
      if (!distinct.empty() && *distinct.rbegin() >= m) throw std::invalid_argument("flip entry out of range");
    } else {
      const Ballot* ballot = std::get_if<Ballot>(&b.replacement);
      if (ballot == nullptr) throw std::invalid_argument("expected a replacement ballot");
      if (kind_of(*ballot) != q.election.kind() || ballot_size(*ballot) != m) {
        throw std::invalid_argument("replacement ballot does not fit the election");
      }
    }
  }
}

Int witness_cost(const BriberyQuery& q, const BriberyWitness& w) {
  check_witness_shape(q, w);
  const BriberyQuery n = normalized(q);
  Int cost = 0;
  for (const Bribe& b : w.bribes) {
    const VoterBlock& v = n.election.voters()[b.block];
    if (const FlipSet* flips = std::get_if<FlipSet>(&b.replacement)) {
      for (CandidateId c : *flips) cost += b.count * v.entry_price(c);
    } else {
      cost += b.count * v.price;
    }
  }
  return cost;
}

Election apply_witness(const Election& e, const BriberyWitness& w) {
  std::vector<VoterBlock> voters = e.voters();
  std::vector<VoterBlock> appended;
  for (const Bribe& b : w.bribes) {
    if (b.block >= voters.size()) throw std::invalid_argument("bribe names a missing voter block");
    VoterBlock moved = e.voters()[b.block];
    moved.multiplicity = b.count;
    if (const FlipSet* flips = std::get_if<FlipSet>(&b.replacement)) {
      moved.ballot = moved.approvals().flipped(*flips);
    } else {
      moved.ballot = std::get<Ballot>(b.replacement);
    }
    voters[b.block].multiplicity -= b.count;
    if (voters[b.block].multiplicity < 0) throw std::invalid_argument("bribe takes more voters than the block holds");
    appended.push_back(std::move(moved));
  }
  std::vector<VoterBlock> result;
  for (auto& v : voters) {
    if (v.multiplicity > 0) result.push_back(std::move(v));
  }
  for (auto& v : appended) result.push_back(std::move(v));
  return e.with_voters(std::move(result));
}

BriberyWitness merged(BriberyWitness w) {
  BriberyWitness out;
  for (Bribe& b : w.bribes) {
    auto same = std::find_if(out.bribes.begin(), out.bribes.end(), [&](const Bribe& o) {
      return o.block == b.block && o.replacement == b.replacement;
    });
    if (same != out.bribes.end()) {
      same->count += b.count;
    } else {
      out.bribes.push_back(std::move(b));
    }
  }
  return out;
}

PreferenceOrder order_with_top(std::size_t m, CandidateId first) {
  std::vector<CandidateId> ranking{first};
  for (CandidateId c = 0; c < m; ++c) {
    if (c != first) ranking.push_back(c);
  }
  return PreferenceOrder(std::move(ranking));
}

PreferenceOrder order_with_top_and_bottom(std::size_t m, CandidateId first, CandidateId last) {
  if (first == last) throw std::invalid_argument("top and bottom must differ");
  std::vector<CandidateId> ranking{first};
  for (CandidateId c = 0; c < m; ++c) {
    if (c != first && c != last) ranking.push_back(c);
  }
  ranking.push_back(last);
  return PreferenceOrder(std::move(ranking));
}

std::vector<Unit> expand_units(const Election& e, std::size_t cap) {
  std::vector<Unit> units;
  const auto& voters = e.voters();
  for (std::size_t i = 0; i < voters.size(); ++i) {
    const std::size_t count = to_index(voters[i].multiplicity, cap);
    if (units.size() + count > cap) throw CapExceeded("too many voters to expand individually");
    for (std::size_t j = 0; j < count; ++j) units.push_back({i, voters[i].price, voters[i].weight});
  }
  return units;
}

}  // namespace bribery
