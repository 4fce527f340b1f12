#pragma once

// Instance generators from Partition, exact cover by 3-sets and manipulation
// into bribery, with certificate translation in both directions where the
// construction allows it.

#include <array>
#include <optional>
#include <vector>

#include "bribery/oracle.hpp"
#include "bribery/query.hpp"

namespace bribery {

struct PartitionInstance {
  std::vector<Int> values;

  Int sum() const;
  // Syntactically legal: nonnegative values with an even sum.
  bool legal() const;
  // Every value is at least sum / (2 + n).
  bool balanced() const;
};

struct X3CInstance {
  std::size_t t = 0;  // ground set is {0, ..., 3t-1}
  std::vector<std::array<std::size_t, 3>> sets;

  bool legal() const;
  bool is_cover(const std::vector<std::size_t>& chosen) const;
};

// Infeasible in every variant: two candidates, one voter for the non-target
// at weight and price 1, budget 0.
BriberyQuery fixed_no_instance(BallotKind kind = BallotKind::orders);
PartitionInstance fixed_no_partition();

// Interleaved (s^_1, o^_1, s^_2, o^_2, ...) with s^_i = 3^(i-1) + 3^n s_i + S'
// and o^_i = 3^(i-1) + S', S' = 3^n S + (3^n - 1)/2. Illegal input maps to
// fixed_no_partition().
PartitionInstance partition_prime_transform(const PartitionInstance& p);

// Two candidates p (id 0) and c (id 1); voter i ranks c first with price and
// weight s_i; budget S. The unique variant adds a free weight-1 voter for p.
BriberyQuery partition_to_weighted_dollar_plurality(const PartitionInstance& p, WinnerMode mode = WinnerMode::nonunique);

// Candidates p, c1, c2 (ids 0..2); block 0 is p > c1 > c2 at weight S, block i
// is c1 > c2 > p at weight s_i; budget n + 1; negative.
BriberyQuery partition_to_negative_weighted(const PartitionInstance& p);

// Candidates b_1..b_3t then p (last id). Block i < |sets| approves S_i, then
// one block per element approving only it, then one block approving p.
BriberyQuery x3c_to_approval(const X3CInstance& x);

// Candidates p (id 0) and c (id 1); approval flip model with per-entry prices.
BriberyQuery partition_to_approval_flip_weighted(const PartitionInstance& p);

// Honest voters at price 1, then one free block per manipulator holding the
// ballot id order with p last; budget 0. Orders only.
BriberyQuery manipulation_to_dollar_bribery(const ManipulationQuery& mq);

// One manipulation query per sub-multiset W of at most k voters: V - W votes
// honestly and W's weights manipulate. Unpriced queries only.
std::vector<ManipulationQuery> bribery_to_manipulation_dtt(const BriberyQuery& q, const Int& kcap);

// Manipulation for a scoring protocol where every manipulator weighs at least
// twice the heaviest honest voter. The protocol is shifted so alpha_m = 0;
// manipulators become voters ranking p last; budget |S|.
BriberyQuery manipulation_prime_to_bribery(const ManipulationQuery& mq);

// Certificates: source solutions to witnesses.
BriberyWitness partition_witness_plurality(const PartitionInstance& p, const std::vector<std::size_t>& subset);
BriberyWitness partition_witness_negative(const PartitionInstance& p, const std::vector<std::size_t>& subset);
BriberyWitness partition_witness_flip(const PartitionInstance& p, const std::vector<std::size_t>& subset);
BriberyWitness x3c_witness(const X3CInstance& x, const std::vector<std::size_t>& cover);
BriberyWitness manipulation_witness(const ManipulationQuery& mq, const std::vector<Ballot>& ballots);

// And back. nullopt when the witness does not encode a source solution.
std::optional<std::vector<std::size_t>> partition_from_plurality_witness(const PartitionInstance& p, const BriberyWitness& w);
std::optional<std::vector<std::size_t>> partition_from_negative_witness(const PartitionInstance& p, const BriberyWitness& w);
std::optional<std::vector<std::size_t>> partition_from_flip_witness(const PartitionInstance& p, const BriberyWitness& w);
std::optional<std::vector<std::size_t>> cover_from_approval_witness(const X3CInstance& x, const BriberyWitness& w);

}  // namespace bribery
