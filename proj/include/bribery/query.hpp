#pragma once

// A bribery instance together with the bribes that answer it.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bribery/election.hpp"

namespace bribery {

enum class WinnerMode { nonunique, unique };

struct BriberyQuery {
  Election election;
  Rule rule;
  CandidateId target = 0;
  Int budget = 0;
  bool priced = false;
  bool weighted = false;
  bool negative = false;
  bool approval_flip = false;
  WinnerMode mode = WinnerMode::nonunique;
  // Encoding hints. They only steer solver selection.
  bool prices_unary = false;
  bool weights_unary = false;

  bool unique() const { return mode == WinnerMode::unique; }
  // Throws std::invalid_argument when the query is malformed.
  void validate() const;
  std::string describe() const;
};

// Copy of q whose election carries unit prices (and no entry prices) when q is
// unpriced, and unit weights when q is unweighted.
BriberyQuery normalized(const BriberyQuery& q);

// Entries of an approval vector to toggle.
using FlipSet = std::vector<CandidateId>;

struct Bribe {
  std::size_t block = 0;
  Int count = 1;
  std::variant<Ballot, FlipSet> replacement;
};

struct BriberyWitness {
  std::vector<Bribe> bribes;

  Int bribed_voters() const;
};

// Throws std::invalid_argument if a bribe names a missing block, takes more
// voters than a block has, or carries the wrong kind of replacement.
void check_witness_shape(const BriberyQuery& q, const BriberyWitness& w);

// Price of the witness under q's pricing (voter count when unpriced).
Int witness_cost(const BriberyQuery& q, const BriberyWitness& w);

// Election after the bribes. Bribed voters are split off their blocks and
// appended as new blocks in witness order; untouched blocks keep their place.
Election apply_witness(const Election& e, const BriberyWitness& w);

// Collapses bribes that share a block and a replacement.
BriberyWitness merged(BriberyWitness w);

// The ballot a promoting bribe hands out: `first` on top, then the rest by id.
PreferenceOrder order_with_top(std::size_t m, CandidateId first);
// `first` on top, `last` at the bottom, the rest by id in between.
PreferenceOrder order_with_top_and_bottom(std::size_t m, CandidateId first, CandidateId last);

// Per-voter view of an election: one entry per unit of multiplicity.
struct Unit {
  std::size_t block;
  Int price;
  Int weight;
};
// Throws CapExceeded past `cap` units.
std::vector<Unit> expand_units(const Election& e, std::size_t cap = 4096);

}  // namespace bribery
