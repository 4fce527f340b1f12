#include "bribery/reductions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace bribery {

Int PartitionInstance::sum() const {
  Int total = 0;
  for (const Int& v : values) total += v;
  return total;
}

bool PartitionInstance::legal() const {
  for (const Int& v : values) {
    if (v < 0) return false;
  }
  return sum() % 2 == 0;
}

bool PartitionInstance::balanced() const {
  const Int total = sum();
  const Int n = values.size();
  return std::all_of(values.begin(), values.end(), [&](const Int& v) { return v * (n + 2) >= total; });
}

bool X3CInstance::legal() const {
  for (const auto& s : sets) {
    if (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]) return false;
    for (std::size_t x : s) {
      if (x >= 3 * t) return false;
    }
  }
  return true;
}

bool X3CInstance::is_cover(const std::vector<std::size_t>& chosen) const {
  if (chosen.size() != t) return false;
  std::vector<int> hits(3 * t, 0);
  for (std::size_t i : chosen) {
    if (i >= sets.size()) return false;
    for (std::size_t x : sets[i]) ++hits[x];
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

namespace {

VoterBlock order_voter(PreferenceOrder order, Int weight, Int price, Int multiplicity = 1) {
  VoterBlock v;
  v.ballot = std::move(order);
  v.weight = std::move(weight);
  v.price = std::move(price);
  v.multiplicity = std::move(multiplicity);
  return v;
}

VoterBlock approval_voter(std::vector<bool> bits, Int multiplicity = 1) {
  VoterBlock v;
  v.ballot = ApprovalVector(std::move(bits));
  v.multiplicity = std::move(multiplicity);
  return v;
}

// Candidates by id with `last` moved to the end.
PreferenceOrder id_order_with_last(std::size_t m, CandidateId last) {
  std::vector<CandidateId> ranking;
  for (CandidateId c = 0; c < m; ++c) {
    if (c != last) ranking.push_back(c);
  }
  ranking.push_back(last);
  return PreferenceOrder(std::move(ranking));
}

}  // namespace

BriberyQuery fixed_no_instance(BallotKind kind) {
  std::vector<VoterBlock> voters;
  Rule rule = Rule::plurality();
  if (kind == BallotKind::orders) {
    voters.push_back(order_voter(PreferenceOrder({1, 0}), 1, 1));
  } else {
    voters.push_back(approval_voter({false, true}));
    rule = Rule::approval();
  }
  BriberyQuery q{Election({"p", "c"}, std::move(voters), kind), rule, 0, 0};
  q.priced = true;
  q.weighted = true;
  return q;
}

PartitionInstance fixed_no_partition() { return PartitionInstance{{2, 2, 2}}; }

PartitionInstance partition_prime_transform(const PartitionInstance& p) {
  if (!p.legal()) return fixed_no_partition();
  const unsigned n = static_cast<unsigned>(p.values.size());
  const Int big = pow_int(3, n);
  const Int half = p.sum() / 2;
  const Int shift = big * half + (big - 1) / 2;
  PartitionInstance out;
  Int unit = 1;  // 3^(i-1)
  for (const Int& s : p.values) {
    out.values.push_back(unit + big * s + shift);
    out.values.push_back(unit + shift);
    unit *= 3;
  }
  return out;
}

BriberyQuery partition_to_weighted_dollar_plurality(const PartitionInstance& p, WinnerMode mode) {
  if (!p.legal()) return fixed_no_instance();
  std::vector<VoterBlock> voters;
  for (const Int& s : p.values) voters.push_back(order_voter(PreferenceOrder({1, 0}), s, s));
  if (mode == WinnerMode::unique) voters.push_back(order_voter(PreferenceOrder({0, 1}), 1, 0));
  BriberyQuery q{Election({"p", "c"}, std::move(voters), BallotKind::orders), Rule::plurality(), 0, p.sum() / 2};
  q.priced = true;
  q.weighted = true;
  q.mode = mode;
  return q;
}

BriberyQuery partition_to_negative_weighted(const PartitionInstance& p) {
  if (!p.legal()) return fixed_no_instance();
  std::vector<VoterBlock> voters;
  voters.push_back(order_voter(PreferenceOrder({0, 1, 2}), p.sum() / 2, 1));
  for (const Int& s : p.values) voters.push_back(order_voter(PreferenceOrder({1, 2, 0}), s, 1));
  BriberyQuery q{Election({"p", "c1", "c2"}, std::move(voters), BallotKind::orders), Rule::plurality(), 0,
                 Int(p.values.size() + 1)};
  q.weighted = true;
  q.negative = true;
  return q;
}

BriberyQuery x3c_to_approval(const X3CInstance& x) {
  if (!x.legal() || x.sets.size() < x.t) return fixed_no_instance(BallotKind::approvals);
  const std::size_t ground = 3 * x.t;
  const std::size_t m = ground + 1;
  const CandidateId p = ground;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ground; ++i) names.push_back("b" + std::to_string(i + 1));
  names.push_back("p");
  std::vector<VoterBlock> voters;
  std::vector<std::size_t> covered(ground, 0);
  for (const auto& s : x.sets) {
    std::vector<bool> bits(m, false);
    for (std::size_t e : s) {
      bits[e] = true;
      ++covered[e];
    }
    voters.push_back(approval_voter(std::move(bits)));
  }
  const std::size_t sets = x.sets.size();
  for (std::size_t e = 0; e < ground; ++e) {
    std::vector<bool> bits(m, false);
    bits[e] = true;
    voters.push_back(approval_voter(std::move(bits), Int(sets - covered[e] + 1)));
  }
  if (sets > x.t) voters.push_back(approval_voter(ApprovalVector::only(m, p).bits(), Int(sets - x.t)));
  return BriberyQuery{Election(std::move(names), std::move(voters), BallotKind::approvals), Rule::approval(), p,
                      Int(x.t)};
}

BriberyQuery partition_to_approval_flip_weighted(const PartitionInstance& p) {
  if (!p.legal()) {
    BriberyQuery q = fixed_no_instance(BallotKind::approvals);
    q.approval_flip = true;
    return q;
  }
  const Int half = p.sum() / 2;
  const Int steep = 2 * half + 1;
  std::vector<VoterBlock> voters;
  VoterBlock v0 = approval_voter({true, false});
  v0.weight = half;
  v0.price = steep;
  v0.entry_prices = {steep, steep};
  voters.push_back(std::move(v0));
  for (const Int& s : p.values) {
    VoterBlock v = approval_voter({false, true});
    v.weight = s;
    v.price = s;
    v.entry_prices = {s, steep};
    voters.push_back(std::move(v));
  }
  BriberyQuery q{Election({"p", "c"}, std::move(voters), BallotKind::approvals), Rule::approval(), 0, half};
  q.priced = true;
  q.weighted = true;
  q.approval_flip = true;
  return q;
}

BriberyQuery manipulation_to_dollar_bribery(const ManipulationQuery& mq) {
  if (mq.election.kind() != BallotKind::orders) throw std::invalid_argument("manipulation embedding needs preference orders");
  const std::size_t m = mq.election.candidate_count();
  std::vector<VoterBlock> voters = mq.election.voters();
  for (VoterBlock& v : voters) v.price = 1;
  for (const Int& w : mq.manipulators) voters.push_back(order_voter(id_order_with_last(m, mq.target), w, 0));
  BriberyQuery q{mq.election.with_voters(std::move(voters)), mq.rule, mq.target, 0};
  q.priced = true;
  q.weighted = true;
  q.mode = mq.mode;
  return q;
}

std::vector<ManipulationQuery> bribery_to_manipulation_dtt(const BriberyQuery& q, const Int& kcap) {
  q.validate();
  if (q.priced) throw std::invalid_argument("the bribe-set enumeration needs an unpriced query");
  if (q.negative || q.approval_flip) throw std::invalid_argument("negative and flip bribery have no manipulation counterpart");
  if (q.budget > kcap) throw CapExceeded("budget " + to_string(q.budget) + " exceeds the enumeration cap " + to_string(kcap));
  const BriberyQuery n = normalized(q);
  const auto& voters = n.election.voters();
  const Int limit = std::min(n.budget, n.election.voter_count());
  std::vector<ManipulationQuery> out;
  std::vector<Int> taken(voters.size(), 0);
  // Enumerate taken[i] in 0..multiplicity with a running total <= limit.
  std::function<void(std::size_t, Int)> descend = [&](std::size_t i, Int used) {
    if (i == voters.size()) {
      ManipulationQuery mq{n.election, n.rule, {}, n.target, n.mode};
      std::vector<VoterBlock> honest;
      for (std::size_t j = 0; j < voters.size(); ++j) {
        for (Int c = 0; c < taken[j]; ++c) mq.manipulators.push_back(voters[j].weight);
        VoterBlock v = voters[j];
        v.multiplicity -= taken[j];
        if (v.multiplicity > 0) honest.push_back(std::move(v));
      }
      mq.election = n.election.with_voters(std::move(honest));
      out.push_back(std::move(mq));
      return;
    }
    for (Int c = 0; c <= voters[i].multiplicity && used + c <= limit; ++c) {
      taken[i] = c;
      descend(i + 1, used + c);
    }
    taken[i] = 0;
  };
  descend(0, 0);
  return out;
}

BriberyQuery manipulation_prime_to_bribery(const ManipulationQuery& mq) {
  const std::size_t m = mq.election.candidate_count();
  if (!mq.rule.positional()) throw std::invalid_argument("the voter-splitting reduction needs a scoring protocol");
  Int heaviest_honest = 0;
  for (const VoterBlock& v : mq.election.voters()) heaviest_honest = std::max(heaviest_honest, v.weight);
  for (const Int& w : mq.manipulators) {
    if (w < 2 * heaviest_honest) return fixed_no_instance();
  }
  std::vector<VoterBlock> voters = mq.election.voters();
  for (VoterBlock& v : voters) v.price = 1;
  for (const Int& w : mq.manipulators) voters.push_back(order_voter(id_order_with_last(m, mq.target), w, 1));
  BriberyQuery q{mq.election.with_voters(std::move(voters)), Rule::scoring(mq.rule.protocol_for(m).normalized()),
                 mq.target, Int(mq.manipulators.size())};
  q.weighted = true;
  q.mode = mq.mode;
  return q;
}

BriberyWitness partition_witness_plurality(const PartitionInstance& p, const std::vector<std::size_t>& subset) {
  BriberyWitness w;
  for (std::size_t i : subset) {
    if (i >= p.values.size()) throw std::invalid_argument("subset index out of range");
    w.bribes.push_back(Bribe{i, 1, Ballot(PreferenceOrder({0, 1}))});
  }
  return w;
}

BriberyWitness partition_witness_negative(const PartitionInstance& p, const std::vector<std::size_t>& subset) {
  BriberyWitness w;
  for (std::size_t i : subset) {
    if (i >= p.values.size()) throw std::invalid_argument("subset index out of range");
    w.bribes.push_back(Bribe{i + 1, 1, Ballot(order_with_top(3, 2))});
  }
  return w;
}

BriberyWitness partition_witness_flip(const PartitionInstance& p, const std::vector<std::size_t>& subset) {
  BriberyWitness w;
  for (std::size_t i : subset) {
    if (i >= p.values.size()) throw std::invalid_argument("subset index out of range");
    w.bribes.push_back(Bribe{i + 1, 1, FlipSet{0}});
  }
  return w;
}

BriberyWitness x3c_witness(const X3CInstance& x, const std::vector<std::size_t>& cover) {
  const std::size_t m = 3 * x.t + 1;
  BriberyWitness w;
  for (std::size_t i : cover) {
    if (i >= x.sets.size()) throw std::invalid_argument("cover index out of range");
    w.bribes.push_back(Bribe{i, 1, Ballot(ApprovalVector::only(m, m - 1))});
  }
  return w;
}

BriberyWitness manipulation_witness(const ManipulationQuery& mq, const std::vector<Ballot>& ballots) {
  if (ballots.size() != mq.manipulators.size()) throw std::invalid_argument("one ballot per manipulator expected");
  const std::size_t first = mq.election.voters().size();
  BriberyWitness w;
  for (std::size_t j = 0; j < ballots.size(); ++j) w.bribes.push_back(Bribe{first + j, 1, ballots[j]});
  return w;
}

namespace {

std::optional<std::vector<std::size_t>> if_half(const PartitionInstance& p, std::set<std::size_t> subset) {
  Int total = 0;
  for (std::size_t i : subset) total += p.values.at(i);
  if (total * 2 != p.sum()) return std::nullopt;
  return std::vector<std::size_t>(subset.begin(), subset.end());
}

}  // namespace

std::optional<std::vector<std::size_t>> partition_from_plurality_witness(const PartitionInstance& p, const BriberyWitness& w) {
  std::set<std::size_t> subset;
  for (const Bribe& b : w.bribes) {
    if (b.block < p.values.size()) subset.insert(b.block);
  }
  return if_half(p, std::move(subset));
}

std::optional<std::vector<std::size_t>> partition_from_negative_witness(const PartitionInstance& p, const BriberyWitness& w) {
  std::set<std::size_t> subset;
  for (const Bribe& b : w.bribes) {
    const auto* ballot = std::get_if<Ballot>(&b.replacement);
    if (b.block == 0 || ballot == nullptr) continue;
    if (std::get<PreferenceOrder>(*ballot).top() == 2) subset.insert(b.block - 1);
  }
  return if_half(p, std::move(subset));
}

std::optional<std::vector<std::size_t>> partition_from_flip_witness(const PartitionInstance& p, const BriberyWitness& w) {
  std::set<std::size_t> subset;
  for (const Bribe& b : w.bribes) {
    const auto* flips = std::get_if<FlipSet>(&b.replacement);
    if (b.block == 0 || flips == nullptr) continue;
    if (std::find(flips->begin(), flips->end(), CandidateId{0}) != flips->end()) subset.insert(b.block - 1);
  }
  return if_half(p, std::move(subset));
}

std::optional<std::vector<std::size_t>> cover_from_approval_witness(const X3CInstance& x, const BriberyWitness& w) {
  std::set<std::size_t> chosen;
  for (const Bribe& b : w.bribes) {
    if (b.block < x.sets.size()) chosen.insert(b.block);
  }
  std::vector<std::size_t> cover(chosen.begin(), chosen.end());
  if (!x.is_cover(cover)) return std::nullopt;
  return cover;
}

}  // namespace bribery
