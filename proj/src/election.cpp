#include "bribery/election.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bribery/permutations.hpp"

namespace bribery {

PreferenceOrder::PreferenceOrder(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
  std::vector<bool> seen(ranking_.size(), false);
  for (CandidateId c : ranking_) {
    if (c >= ranking_.size() || seen[c]) {
      throw std::invalid_argument("preference order is not a permutation of the candidates");
    }
    seen[c] = true;
  }
}

PreferenceOrder PreferenceOrder::identity(std::size_t m) {
  std::vector<CandidateId> ranking(m);
  std::iota(ranking.begin(), ranking.end(), 0);
  return PreferenceOrder(std::move(ranking));
}

std::size_t PreferenceOrder::position(CandidateId c) const {
  auto it = std::find(ranking_.begin(), ranking_.end(), c);
  if (it == ranking_.end()) throw std::out_of_range("candidate not in preference order");
  return static_cast<std::size_t>(it - ranking_.begin());
}

PreferenceOrder PreferenceOrder::swapped(std::size_t position) const {
  if (position + 1 >= ranking_.size()) throw std::out_of_range("swap position past the end of the order");
  PreferenceOrder result = *this;
  std::swap(result.ranking_[position], result.ranking_[position + 1]);
  return result;
}

PreferenceOrder PreferenceOrder::reversed() const {
  PreferenceOrder result = *this;
  std::reverse(result.ranking_.begin(), result.ranking_.end());
  return result;
}

ApprovalVector ApprovalVector::only(std::size_t m, CandidateId c) {
  std::vector<bool> bits(m, false);
  bits.at(c) = true;
  return ApprovalVector(std::move(bits));
}

ApprovalVector ApprovalVector::flipped(const std::vector<CandidateId>& entries) const {
  ApprovalVector result = *this;
  for (CandidateId c : entries) result.bits_.at(c) = !result.bits_.at(c);
  return result;
}

std::size_t ballot_size(const Ballot& ballot) {
  return std::visit([](const auto& b) { return b.size(); }, ballot);
}

BallotKind kind_of(const Ballot& ballot) {
  return std::holds_alternative<PreferenceOrder>(ballot) ? BallotKind::orders : BallotKind::approvals;
}

Int VoterBlock::entry_price(CandidateId c) const {
  if (entry_prices.empty()) return price;
  return entry_prices.at(c);
}

Election::Election(std::vector<std::string> candidates, std::vector<VoterBlock> voters, BallotKind kind)
    : candidates_(std::move(candidates)), voters_(std::move(voters)), kind_(kind) {
  if (candidates_.empty()) throw std::invalid_argument("election has no candidates");
  const std::size_t m = candidates_.size();
  for (const VoterBlock& v : voters_) {
    if (kind_of(v.ballot) != kind_) throw std::invalid_argument("ballot kind does not match the election");
    if (ballot_size(v.ballot) != m) throw std::invalid_argument("ballot length does not match candidate count");
    if (v.price < 0 || v.weight < 0) throw std::invalid_argument("negative price or weight");
    if (v.multiplicity < 1) throw std::invalid_argument("voter multiplicity must be positive");
    if (!v.entry_prices.empty()) {
      if (v.entry_prices.size() != m) throw std::invalid_argument("entry price list length does not match candidates");
      for (const Int& p : v.entry_prices) {
        if (p < 0) throw std::invalid_argument("negative entry price");
      }
    }
  }
}

Election Election::unnamed(std::size_t m, std::vector<VoterBlock> voters, BallotKind kind) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("c" + std::to_string(i));
  return Election(std::move(names), std::move(voters), kind);
}

std::optional<CandidateId> Election::find(const std::string& name) const {
  auto it = std::find(candidates_.begin(), candidates_.end(), name);
  if (it == candidates_.end()) return std::nullopt;
  return static_cast<CandidateId>(it - candidates_.begin());
}

Int Election::voter_count() const {
  Int total = 0;
  for (const auto& v : voters_) total += v.multiplicity;
  return total;
}

Int Election::total_weight() const {
  Int total = 0;
  for (const auto& v : voters_) total += v.mass();
  return total;
}

bool Election::unit_weights() const {
  return std::all_of(voters_.begin(), voters_.end(), [](const VoterBlock& v) { return v.weight == 1; });
}

Election Election::with_voters(std::vector<VoterBlock> voters) const {
  return Election(candidates_, std::move(voters), kind_);
}

ScoringProtocol::ScoringProtocol(std::vector<Int> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw std::invalid_argument("scoring protocol needs at least one position");
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < 0) throw std::invalid_argument("scoring protocol entries must be nonnegative");
    if (i > 0 && alpha_[i] > alpha_[i - 1]) throw std::invalid_argument("scoring protocol must be nonincreasing");
  }
}

ScoringProtocol ScoringProtocol::plurality(std::size_t m) {
  std::vector<Int> alpha(m, 0);
  alpha.at(0) = 1;
  return ScoringProtocol(std::move(alpha));
}

ScoringProtocol ScoringProtocol::veto(std::size_t m) {
  std::vector<Int> alpha(m, 1);
  alpha.back() = 0;
  return ScoringProtocol(std::move(alpha));
}

ScoringProtocol ScoringProtocol::k_approval(std::size_t m, std::size_t k) {
  if (k > m) throw std::invalid_argument("k-approval with k larger than the candidate count");
  std::vector<Int> alpha(m, 0);
  std::fill(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(k), Int(1));
  return ScoringProtocol(std::move(alpha));
}

ScoringProtocol ScoringProtocol::borda(std::size_t m) {
  std::vector<Int> alpha;
  for (std::size_t i = m; i-- > 0;) alpha.emplace_back(i);
  return ScoringProtocol(std::move(alpha));
}

bool ScoringProtocol::constant() const { return alpha_.front() == alpha_.back(); }

bool ScoringProtocol::tail_constant() const {
  return alpha_.size() <= 2 || alpha_[1] == alpha_.back();
}

ScoringProtocol ScoringProtocol::normalized() const {
  std::vector<Int> shifted = alpha_;
  const Int last = alpha_.back();
  for (Int& a : shifted) a -= last;
  return ScoringProtocol(std::move(shifted));
}

bool Rule::score_based() const {
  switch (kind) {
    case RuleKind::plurality:
    case RuleKind::approval:
    case RuleKind::veto:
    case RuleKind::k_approval:
    case RuleKind::scoring:
      return true;
    default:
      return false;
  }
}

bool Rule::positional() const { return score_based() && kind != RuleKind::approval; }

ScoringProtocol Rule::protocol_for(std::size_t m) const {
  switch (kind) {
    case RuleKind::plurality:
      return ScoringProtocol::plurality(m);
    case RuleKind::veto:
      return ScoringProtocol::veto(m);
    case RuleKind::k_approval:
      return ScoringProtocol::k_approval(m, approvals);
    case RuleKind::scoring:
      if (!protocol) throw std::invalid_argument("scoring rule without a protocol");
      if (protocol->size() != m) {
        throw std::invalid_argument("scoring protocol has " + std::to_string(protocol->size()) +
                                    " positions but the election has " + std::to_string(m) + " candidates");
      }
      return *protocol;
    default:
      throw std::invalid_argument("rule " + name() + " is not a scoring protocol");
  }
}

std::string Rule::name() const {
  switch (kind) {
    case RuleKind::plurality: return "plurality";
    case RuleKind::approval: return "approval";
    case RuleKind::veto: return "veto";
    case RuleKind::k_approval: return "kapproval " + std::to_string(approvals);
    case RuleKind::scoring: {
      std::string text = "scoring";
      if (protocol) {
        for (const Int& a : protocol->alpha()) text += " " + to_string(a);
      }
      return text;
    }
    case RuleKind::dodgson: return "dodgson";
    case RuleKind::young: return "young";
    case RuleKind::kemeny: return "kemeny";
  }
  return "unknown";
}

namespace {

void require_kind(const Election& e, const Rule& rule) {
  if (e.kind() != rule.ballot_kind()) {
    throw std::invalid_argument("rule " + rule.name() + " does not accept this ballot kind");
  }
}

std::vector<CandidateId> argmax(const ScoreTable& scores) {
  const Int best = *std::max_element(scores.begin(), scores.end());
  std::vector<CandidateId> result;
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (scores[c] == best) result.push_back(c);
  }
  return result;
}

std::vector<CandidateId> argmin_defined(const std::vector<std::optional<Int>>& scores) {
  std::optional<Int> best;
  for (const auto& s : scores) {
    if (s && (!best || *s < *best)) best = s;
  }
  std::vector<CandidateId> result;
  if (!best) return result;
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (scores[c] && *scores[c] == *best) result.push_back(c);
  }
  return result;
}

void require_unit_weights(const Election& e, const char* what) {
  if (e.kind() != BallotKind::orders) throw std::invalid_argument(std::string(what) + " needs preference orders");
  if (!e.unit_weights()) throw std::invalid_argument(std::string(what) + " is defined for unweighted voters only");
}

// Multiset of orders as (order, count) pairs.
std::vector<std::pair<PreferenceOrder, std::size_t>> order_profile(const Election& e, std::size_t cap) {
  std::map<PreferenceOrder, std::size_t> grouped;
  for (const auto& v : e.voters()) grouped[v.order()] += to_index(v.multiplicity, cap);
  return {grouped.begin(), grouped.end()};
}

}  // namespace

ScoreTable score_table(const Election& e, const Rule& rule) {
  if (!rule.score_based()) throw std::invalid_argument("rule " + rule.name() + " has no score table");
  require_kind(e, rule);
  const std::size_t m = e.candidate_count();
  ScoreTable scores(m, 0);
  if (rule.kind == RuleKind::approval) {
    for (const auto& v : e.voters()) {
      const Int mass = v.mass();
      for (CandidateId c = 0; c < m; ++c) {
        if (v.approvals().approves(c)) scores[c] += mass;
      }
    }
    return scores;
  }
  if (rule.kind == RuleKind::plurality) {
    for (const auto& v : e.voters()) scores[v.order().top()] += v.mass();
    return scores;
  }
  const ScoringProtocol alpha = rule.protocol_for(m);
  for (const auto& v : e.voters()) {
    const Int mass = v.mass();
    const auto& ranking = v.order().ranking();
    for (std::size_t pos = 0; pos < m; ++pos) {
      if (alpha[pos] != 0) scores[ranking[pos]] += alpha[pos] * mass;
    }
  }
  return scores;
}

std::vector<CandidateId> winners(const Election& e, const Rule& rule) {
  require_kind(e, rule);
  const std::size_t m = e.candidate_count();
  if (rule.score_based()) return argmax(score_table(e, rule));
  switch (rule.kind) {
    case RuleKind::dodgson: {
      std::vector<std::optional<Int>> scores;
      for (CandidateId c = 0; c < m; ++c) scores.push_back(dodgson_score(e, c));
      return argmin_defined(scores);
    }
    case RuleKind::young: {
      std::vector<std::optional<Int>> scores;
      for (CandidateId c = 0; c < m; ++c) scores.push_back(young_score(e, c));
      return argmin_defined(scores);
    }
    case RuleKind::kemeny:
      return kemeny_winners(e);
    default:
      throw std::invalid_argument("unsupported rule");
  }
}

bool is_winner(const Election& e, const Rule& rule, CandidateId c, bool unique) {
  const auto w = winners(e, rule);
  if (unique) return w.size() == 1 && w.front() == c;
  return std::find(w.begin(), w.end(), c) != w.end();
}

Int pairwise_margin(const Election& e, CandidateId a, CandidateId b) {
  if (e.kind() != BallotKind::orders) throw std::invalid_argument("pairwise contests need preference orders");
  Int margin = 0;
  for (const auto& v : e.voters()) {
    if (v.order().prefers(a, b)) {
      margin += v.mass();
    } else {
      margin -= v.mass();
    }
  }
  return margin;
}

bool is_condorcet_winner(const Election& e, CandidateId c) {
  for (CandidateId q = 0; q < e.candidate_count(); ++q) {
    if (q != c && pairwise_margin(e, c, q) <= 0) return false;
  }
  return true;
}

std::optional<CandidateId> condorcet_winner(const Election& e) {
  if (e.kind() != BallotKind::orders) throw std::invalid_argument("Condorcet winners need preference orders");
  for (CandidateId c = 0; c < e.candidate_count(); ++c) {
    if (is_condorcet_winner(e, c)) return c;
  }
  return std::nullopt;
}

std::optional<Int> dodgson_score(const Election& e, CandidateId c) {
  require_unit_weights(e, "Dodgson score");
  const std::size_t m = e.candidate_count();
  if (c >= m) throw std::out_of_range("candidate out of range");
  if (m == 1) return Int(0);
  if (m > 4 || e.voter_count() > 8) {
    throw CapExceeded("breadth-first Dodgson search is limited to 8 ballots and 4 candidates");
  }
  // Voters are interchangeable, so a state is the count of voters per order.
  const auto orders = all_orders(m);
  const std::size_t n_orders = orders.size();
  std::vector<std::vector<std::size_t>> neighbour(n_orders);
  for (std::size_t i = 0; i < n_orders; ++i) {
    for (std::size_t pos = 0; pos + 1 < m; ++pos) neighbour[i].push_back(order_index(orders[i].swapped(pos)));
  }
  auto condorcet = [&](const std::vector<std::uint8_t>& state) {
    for (CandidateId q = 0; q < m; ++q) {
      if (q == c) continue;
      long margin = 0;
      for (std::size_t i = 0; i < n_orders; ++i) {
        if (state[i] == 0) continue;
        margin += orders[i].prefers(c, q) ? state[i] : -static_cast<long>(state[i]);
      }
      if (margin <= 0) return false;
    }
    return true;
  };
  std::vector<std::uint8_t> start(n_orders, 0);
  for (const auto& v : e.voters()) start[order_index(v.order())] += static_cast<std::uint8_t>(to_index(v.multiplicity));
  std::set<std::vector<std::uint8_t>> seen{start};
  std::vector<std::vector<std::uint8_t>> layer{start};
  for (std::size_t depth = 0; !layer.empty(); ++depth) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& state : layer) {
      if (condorcet(state)) return Int(depth);
      for (std::size_t i = 0; i < n_orders; ++i) {
        if (state[i] == 0) continue;
        for (std::size_t j : neighbour[i]) {
          auto moved = state;
          --moved[i];
          ++moved[j];
          if (seen.insert(moved).second) next.push_back(std::move(moved));
        }
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<Int> young_score(const Election& e, CandidateId c) {
  require_unit_weights(e, "Young score");
  const std::size_t m = e.candidate_count();
  if (c >= m) throw std::out_of_range("candidate out of range");
  if (m == 1) return Int(0);
  const auto profile = order_profile(e, std::size_t{1} << 20);
  std::size_t combinations = 1;
  for (const auto& [order, count] : profile) {
    combinations *= count + 1;
    if (combinations > (std::size_t{1} << 22)) throw CapExceeded("too many voter subsets for exhaustive Young score");
  }
  // margin contribution of one voter of each order, per rival
  std::vector<std::vector<long>> sign(profile.size(), std::vector<long>(m, 0));
  for (std::size_t i = 0; i < profile.size(); ++i) {
    for (CandidateId q = 0; q < m; ++q) {
      if (q != c) sign[i][q] = profile[i].first.prefers(c, q) ? 1 : -1;
    }
  }
  std::optional<std::size_t> best;
  std::vector<std::size_t> removed(profile.size(), 0);
  for (std::size_t step = 0; step < combinations; ++step) {
    std::size_t total_removed = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) total_removed += removed[i];
    if (!best || total_removed < *best) {
      bool ok = true;
      for (CandidateId q = 0; q < m && ok; ++q) {
        if (q == c) continue;
        long margin = 0;
        for (std::size_t i = 0; i < profile.size(); ++i) {
          margin += sign[i][q] * static_cast<long>(profile[i].second - removed[i]);
        }
        ok = margin > 0;
      }
      if (ok) best = total_removed;
    }
    // mixed-radix increment
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (++removed[i] <= profile[i].second) break;
      removed[i] = 0;
    }
  }
  if (!best) return std::nullopt;
  return Int(*best);
}

std::size_t agree(const PreferenceOrder& a, const PreferenceOrder& b) {
  if (a.size() != b.size()) throw std::invalid_argument("orders over different candidate counts");
  const std::size_t m = a.size();
  return m * (m - 1) / 2 - kendall_distance(a, b);
}

std::vector<CandidateId> kemeny_winners(const Election& e) {
  if (e.kind() != BallotKind::orders) throw std::invalid_argument("Kemeny needs preference orders");
  const auto orders = all_orders(e.candidate_count());
  std::vector<Int> agreement(orders.size(), 0);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (const auto& v : e.voters()) agreement[i] += v.mass() * agree(orders[i], v.order());
  }
  const Int best = *std::max_element(agreement.begin(), agreement.end());
  std::set<CandidateId> tops;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (agreement[i] == best) tops.insert(orders[i].top());
  }
  return {tops.begin(), tops.end()};
}

}  // namespace bribery
