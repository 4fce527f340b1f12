#pragma once

// Candidates, ballots and voter blocks, plus winner and score computation for
// every rule the solvers work with.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bribery/integer.hpp"

namespace bribery {

// Dense candidate index 0..m-1. Names only exist for I/O.
using CandidateId = std::size_t;

// A strict, complete ranking; most preferred first.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  explicit PreferenceOrder(std::vector<CandidateId> ranking);

  static PreferenceOrder identity(std::size_t m);

  const std::vector<CandidateId>& ranking() const { return ranking_; }
  std::size_t size() const { return ranking_.size(); }
  CandidateId top() const { return ranking_.front(); }
  CandidateId bottom() const { return ranking_.back(); }
  CandidateId at(std::size_t position) const { return ranking_.at(position); }
  std::size_t position(CandidateId c) const;
  bool prefers(CandidateId a, CandidateId b) const { return position(a) < position(b); }

  // Exchanges the candidates at `position` and `position + 1`.
  PreferenceOrder swapped(std::size_t position) const;
  PreferenceOrder reversed() const;

  auto operator<=>(const PreferenceOrder&) const = default;

 private:
  std::vector<CandidateId> ranking_;
};

class ApprovalVector {
 public:
  ApprovalVector() = default;
  explicit ApprovalVector(std::vector<bool> bits) : bits_(std::move(bits)) {}

  static ApprovalVector only(std::size_t m, CandidateId c);

  const std::vector<bool>& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool approves(CandidateId c) const { return bits_.at(c); }
  ApprovalVector flipped(const std::vector<CandidateId>& entries) const;

  auto operator<=>(const ApprovalVector&) const = default;

 private:
  std::vector<bool> bits_;
};

using Ballot = std::variant<PreferenceOrder, ApprovalVector>;

enum class BallotKind { orders, approvals };

std::size_t ballot_size(const Ballot& ballot);
BallotKind kind_of(const Ballot& ballot);

// One line of the electorate: `multiplicity` identical voters.
struct VoterBlock {
  Ballot ballot;
  Int price = 1;
  Int weight = 1;
  Int multiplicity = 1;
  // Per-entry flip prices for the approval flip model. Empty means every
  // entry costs `price`.
  std::vector<Int> entry_prices;

  const PreferenceOrder& order() const { return std::get<PreferenceOrder>(ballot); }
  const ApprovalVector& approvals() const { return std::get<ApprovalVector>(ballot); }
  Int entry_price(CandidateId c) const;
  // Total weight the block carries (weight times multiplicity).
  Int mass() const { return weight * multiplicity; }
};

class Election {
 public:
  Election(std::vector<std::string> candidates, std::vector<VoterBlock> voters, BallotKind kind);

  // Candidates named "c0", "c1", ...
  static Election unnamed(std::size_t m, std::vector<VoterBlock> voters, BallotKind kind);

  std::size_t candidate_count() const { return candidates_.size(); }
  const std::vector<std::string>& candidates() const { return candidates_; }
  const std::string& name(CandidateId c) const { return candidates_.at(c); }
  std::optional<CandidateId> find(const std::string& name) const;

  const std::vector<VoterBlock>& voters() const { return voters_; }
  BallotKind kind() const { return kind_; }

  Int voter_count() const;
  Int total_weight() const;
  bool unit_weights() const;

  Election with_voters(std::vector<VoterBlock> voters) const;

 private:
  std::vector<std::string> candidates_;
  std::vector<VoterBlock> voters_;
  BallotKind kind_;
};

// Nonincreasing vector of nonnegative points, alpha_1 >= ... >= alpha_m.
class ScoringProtocol {
 public:
  explicit ScoringProtocol(std::vector<Int> alpha);

  static ScoringProtocol plurality(std::size_t m);
  static ScoringProtocol veto(std::size_t m);
  static ScoringProtocol k_approval(std::size_t m, std::size_t k);
  static ScoringProtocol borda(std::size_t m);

  const std::vector<Int>& alpha() const { return alpha_; }
  std::size_t size() const { return alpha_.size(); }
  const Int& operator[](std::size_t position) const { return alpha_.at(position); }

  // alpha_1 == alpha_m
  bool constant() const;
  // alpha_2 == ... == alpha_m
  bool tail_constant() const;
  // Shifts every entry down by alpha_m.
  ScoringProtocol normalized() const;

  bool operator==(const ScoringProtocol&) const = default;

 private:
  std::vector<Int> alpha_;
};

enum class RuleKind { plurality, approval, veto, k_approval, scoring, dodgson, young, kemeny };

struct Rule {
  RuleKind kind = RuleKind::plurality;
  std::size_t approvals = 0;  // k for k-approval
  std::optional<ScoringProtocol> protocol;

  static Rule plurality() { return {RuleKind::plurality, 0, std::nullopt}; }
  static Rule approval() { return {RuleKind::approval, 0, std::nullopt}; }
  static Rule veto() { return {RuleKind::veto, 0, std::nullopt}; }
  static Rule k_approval(std::size_t k) { return {RuleKind::k_approval, k, std::nullopt}; }
  static Rule scoring(ScoringProtocol alpha) { return {RuleKind::scoring, 0, std::move(alpha)}; }
  static Rule dodgson() { return {RuleKind::dodgson, 0, std::nullopt}; }
  static Rule young() { return {RuleKind::young, 0, std::nullopt}; }
  static Rule kemeny() { return {RuleKind::kemeny, 0, std::nullopt}; }

  bool score_based() const;
  // Plurality, veto, k-approval and explicit scoring protocols.
  bool positional() const;
  BallotKind ballot_kind() const { return kind == RuleKind::approval ? BallotKind::approvals : BallotKind::orders; }
  // The points vector a positional rule uses with m candidates.
  ScoringProtocol protocol_for(std::size_t m) const;
  std::string name() const;
};

using ScoreTable = std::vector<Int>;

ScoreTable score_table(const Election& e, const Rule& rule);
std::vector<CandidateId> winners(const Election& e, const Rule& rule);
bool is_winner(const Election& e, const Rule& rule, CandidateId c, bool unique);

// Weight ranking a above b minus weight ranking b above a.
Int pairwise_margin(const Election& e, CandidateId a, CandidateId b);
std::optional<CandidateId> condorcet_winner(const Election& e);
bool is_condorcet_winner(const Election& e, CandidateId c);

// Least number of adjacent swaps making c a Condorcet winner, found by
// breadth-first search. nullopt when no swap sequence works (no voters).
// Throws CapExceeded beyond 8 ballots or 4 candidates.
std::optional<Int> dodgson_score(const Election& e, CandidateId c);

// Least number of removed voters after which c is a Condorcet winner;
// nullopt when no subset works.
std::optional<Int> young_score(const Election& e, CandidateId c);

// Number of unordered pairs ranked the same way.
std::size_t agree(const PreferenceOrder& a, const PreferenceOrder& b);
std::vector<CandidateId> kemeny_winners(const Election& e);

}  // namespace bribery
