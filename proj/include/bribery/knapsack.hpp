#pragma once

// 0/1 knapsack tables over one candidate's supporters, and the threshold
// versions that combine several candidates.

#include <optional>
#include <vector>

#include "bribery/integer.hpp"

namespace bribery {

struct Item {
  Int price;
  Int weight;
  std::size_t tag = 0;  // caller's handle, e.g. a voter block
};

using VoterPool = std::vector<Item>;

enum class Axis { by_price, by_weight };

struct DpTable {
  Axis axis;
  std::vector<std::optional<Int>> entries;

  const std::optional<Int>& at(std::size_t index) const { return entries.at(index); }
  std::size_t size() const { return entries.size(); }
};

Int total_price(const VoterPool& pool);
Int total_weight(const VoterPool& pool);

// Largest weight of a subset costing at most b. Always defined for b >= 0.
Int heaviest(const VoterPool& pool, const Int& b);
// Least price of a subset weighing at least w; nullopt when w exceeds the
// pool's weight. Targets w <= 0 cost nothing.
std::optional<Int> cheapest(const VoterPool& pool, const Int& w);

// heaviest for every budget 0..max_budget.
DpTable heaviest_table(const VoterPool& pool, std::size_t max_budget);
// cheapest for every target 0..total_weight(pool).
DpTable cheapest_table(const VoterPool& pool);

// Item indices realizing heaviest(pool, b) and cheapest(pool, w).
std::vector<std::size_t> heaviest_subset(const VoterPool& pool, const Int& b);
std::optional<std::vector<std::size_t>> cheapest_subset(const VoterPool& pool, const Int& w);

// One rival of the designated candidate: its current score and the voters
// that could be bought away from it.
struct Contender {
  Int score;
  VoterPool pool;
};

// Largest weight that can be bought from the contenders' pools with at most
// b dollars while leaving every contender at score <= r.
std::optional<Int> Heaviest(const std::vector<Contender>& contenders, const Int& b, const Int& r);
// Least price of buying at least w weight while leaving every contender at
// score <= r.
std::optional<Int> Cheapest(const std::vector<Contender>& contenders, const Int& w, const Int& r);

// Chosen item indices, one list per contender.
using Selection = std::vector<std::vector<std::size_t>>;

// As above, also returning the subsets that attain the optimum.
std::optional<std::pair<Int, Selection>> Heaviest_with_selection(const std::vector<Contender>& contenders, const Int& b,
                                                                 const Int& r);
std::optional<std::pair<Int, Selection>> Cheapest_with_selection(const std::vector<Contender>& contenders, const Int& w,
                                                                 const Int& r);

}  // namespace bribery
