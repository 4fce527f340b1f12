#include "bribery/knapsack.hpp"

#include <algorithm>
#include <stdexcept>

namespace bribery {

namespace {

void check_pool(const VoterPool& pool) {
  for (const Item& item : pool) {
    if (item.price < 0 || item.weight < 0) throw std::invalid_argument("knapsack item with negative price or weight");
  }
}

// rows[i][x]: best value using the first i items at axis index x.
struct Rows {
  std::vector<std::vector<std::optional<Int>>> rows;
};

Rows heaviest_rows(const VoterPool& pool, std::size_t budget) {
  check_pool(pool);
  Rows t;
  t.rows.assign(pool.size() + 1, std::vector<std::optional<Int>>(budget + 1, Int(0)));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& prev = t.rows[i];
    auto& cur = t.rows[i + 1];
    const Int& price = pool[i].price;
    for (std::size_t b = 0; b <= budget; ++b) {
      cur[b] = prev[b];
      if (price <= b) {
        const Int take = *prev[b - price.convert_to<std::size_t>()] + pool[i].weight;
        if (take > *cur[b]) cur[b] = take;
      }
    }
  }
  return t;
}

Rows cheapest_rows(const VoterPool& pool) {
  check_pool(pool);
  const std::size_t total = to_index(total_weight(pool));
  Rows t;
  t.rows.assign(pool.size() + 1, std::vector<std::optional<Int>>(total + 1));
  t.rows[0][0] = Int(0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& prev = t.rows[i];
    auto& cur = t.rows[i + 1];
    const std::size_t weight = to_index(pool[i].weight);
    for (std::size_t w = 0; w <= total; ++w) {
      cur[w] = prev[w];
      const std::size_t rest = w > weight ? w - weight : 0;
      if (prev[rest]) {
        const Int take = *prev[rest] + pool[i].price;
        if (!cur[w] || take < *cur[w]) cur[w] = take;
      }
    }
  }
  return t;
}

std::vector<std::size_t> trace_heaviest(const VoterPool& pool, const Rows& t, std::size_t b) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = pool.size(); i-- > 0;) {
    if (*t.rows[i + 1][b] != *t.rows[i][b]) {
      chosen.push_back(i);
      b -= pool[i].price.convert_to<std::size_t>();
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<std::size_t> trace_cheapest(const VoterPool& pool, const Rows& t, std::size_t w) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = pool.size(); i-- > 0;) {
    if (t.rows[i + 1][w] != t.rows[i][w]) {
      chosen.push_back(i);
      const std::size_t weight = pool[i].weight.convert_to<std::size_t>();
      w = w > weight ? w - weight : 0;
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

std::size_t clamp_budget(const Int& b, const Int& useful) {
  if (b < 0) throw std::invalid_argument("negative budget");
  return to_index(b < useful ? b : useful);
}

}  // namespace

Int total_price(const VoterPool& pool) {
  Int total = 0;
  for (const Item& item : pool) total += item.price;
  return total;
}

Int total_weight(const VoterPool& pool) {
  Int total = 0;
  for (const Item& item : pool) total += item.weight;
  return total;
}

DpTable heaviest_table(const VoterPool& pool, std::size_t max_budget) {
  const std::size_t useful = std::min(max_budget, to_index(total_price(pool)));
  const Rows t = heaviest_rows(pool, useful);
  DpTable table{Axis::by_price, {}};
  for (std::size_t b = 0; b <= max_budget; ++b) table.entries.push_back(t.rows.back()[std::min(b, useful)]);
  return table;
}

DpTable cheapest_table(const VoterPool& pool) {
  return {Axis::by_weight, cheapest_rows(pool).rows.back()};
}

Int heaviest(const VoterPool& pool, const Int& b) {
  const std::size_t budget = clamp_budget(b, total_price(pool));
  return *heaviest_rows(pool, budget).rows.back()[budget];
}

std::optional<Int> cheapest(const VoterPool& pool, const Int& w) {
  if (w <= 0) return Int(0);
  if (w > total_weight(pool)) return std::nullopt;
  return cheapest_rows(pool).rows.back()[to_index(w)];
}

std::vector<std::size_t> heaviest_subset(const VoterPool& pool, const Int& b) {
  const std::size_t budget = clamp_budget(b, total_price(pool));
  return trace_heaviest(pool, heaviest_rows(pool, budget), budget);
}

std::optional<std::vector<std::size_t>> cheapest_subset(const VoterPool& pool, const Int& w) {
  if (w <= 0) return std::vector<std::size_t>{};
  if (w > total_weight(pool)) return std::nullopt;
  const std::size_t target = to_index(w);
  return trace_cheapest(pool, cheapest_rows(pool), target);
}

namespace {

// Convolution over split points, keeping the argmax/argmin split per index so
// the per-contender amounts can be read back.
struct Combined {
  std::vector<std::optional<Int>> value;
  std::vector<std::vector<std::size_t>> own;  // own[i][x]: amount given to contender i at total x
};

template <class Better>
Combined combine(const std::vector<std::vector<std::optional<Int>>>& bases, std::vector<std::optional<Int>> start,
                 Better better) {
  const std::size_t width = start.size();
  Combined result;
  result.value = std::move(start);
  for (const auto& base : bases) {
    std::vector<std::optional<Int>> next(width);
    std::vector<std::size_t> split(width, 0);
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t mine = 0; mine <= x; ++mine) {
        const auto& left = result.value[x - mine];
        const auto& right = base[mine];
        if (!left || !right) continue;
        const Int total = *left + *right;
        if (!next[x] || better(total, *next[x])) {
          next[x] = total;
          split[x] = mine;
        }
      }
    }
    result.value = std::move(next);
    result.own.push_back(std::move(split));
  }
  return result;
}

std::vector<std::size_t> read_back(const Combined& c, std::size_t x) {
  std::vector<std::size_t> amounts(c.own.size());
  for (std::size_t i = c.own.size(); i-- > 0;) {
    amounts[i] = c.own[i][x];
    x -= amounts[i];
  }
  return amounts;
}

std::optional<std::pair<Int, Selection>> heaviest_impl(const std::vector<Contender>& contenders, const Int& b,
                                                       const Int& r, bool want_selection) {
  Int useful = 0;
  for (const auto& c : contenders) useful += total_price(c.pool);
  const std::size_t budget = clamp_budget(b, useful);
  std::vector<std::vector<std::optional<Int>>> bases;
  std::vector<Rows> rows;
  for (const auto& c : contenders) {
    rows.push_back(heaviest_rows(c.pool, budget));
    std::vector<std::optional<Int>> base(budget + 1);
    for (std::size_t x = 0; x <= budget; ++x) {
      const Int& h = *rows.back().rows.back()[x];
      if (c.score - h <= r) base[x] = h;
    }
    bases.push_back(std::move(base));
  }
  const Combined all = combine(bases, std::vector<std::optional<Int>>(budget + 1, Int(0)),
                               [](const Int& a, const Int& best) { return a > best; });
  if (!all.value[budget]) return std::nullopt;
  Selection selection;
  if (want_selection) {
    const auto amounts = read_back(all, budget);
    for (std::size_t i = 0; i < contenders.size(); ++i) {
      selection.push_back(trace_heaviest(contenders[i].pool, rows[i], amounts[i]));
    }
  }
  return std::make_pair(*all.value[budget], std::move(selection));
}

std::optional<std::pair<Int, Selection>> cheapest_impl(const std::vector<Contender>& contenders, const Int& w,
                                                       const Int& r, bool want_selection) {
  Int reachable = 0;
  for (const auto& c : contenders) reachable += total_weight(c.pool);
  if (w > reachable) return std::nullopt;
  const std::size_t target = to_index(w < 0 ? Int(0) : w);
  std::vector<std::vector<std::optional<Int>>> bases;
  std::vector<Rows> rows;
  // amount actually demanded from contender i when it is asked for x
  std::vector<std::vector<std::size_t>> demand;
  for (const auto& c : contenders) {
    rows.push_back(cheapest_rows(c.pool));
    const auto& table = rows.back().rows.back();
    std::vector<std::optional<Int>> base(target + 1);
    std::vector<std::size_t> asked(target + 1, 0);
    for (std::size_t x = 0; x <= target; ++x) {
      Int need = x;
      if (c.score - need > r) need = c.score - r;
      if (need < table.size()) {
        base[x] = table[need.convert_to<std::size_t>()];
        asked[x] = need.convert_to<std::size_t>();
      }
    }
    bases.push_back(std::move(base));
    demand.push_back(std::move(asked));
  }
  std::vector<std::optional<Int>> start(target + 1);
  start[0] = Int(0);
  const Combined all = combine(bases, std::move(start), [](const Int& a, const Int& best) { return a < best; });
  if (!all.value[target]) return std::nullopt;
  Selection selection;
  if (want_selection) {
    const auto amounts = read_back(all, target);
    for (std::size_t i = 0; i < contenders.size(); ++i) {
      selection.push_back(trace_cheapest(contenders[i].pool, rows[i], demand[i][amounts[i]]));
    }
  }
  return std::make_pair(*all.value[target], std::move(selection));
}

}  // namespace

std::optional<Int> Heaviest(const std::vector<Contender>& contenders, const Int& b, const Int& r) {
  auto result = heaviest_impl(contenders, b, r, false);
  if (!result) return std::nullopt;
  return result->first;
}

std::optional<Int> Cheapest(const std::vector<Contender>& contenders, const Int& w, const Int& r) {
  auto result = cheapest_impl(contenders, w, r, false);
  if (!result) return std::nullopt;
  return result->first;
}

std::optional<std::pair<Int, Selection>> Heaviest_with_selection(const std::vector<Contender>& contenders, const Int& b,
                                                                 const Int& r) {
  return heaviest_impl(contenders, b, r, true);
}

std::optional<std::pair<Int, Selection>> Cheapest_with_selection(const std::vector<Contender>& contenders, const Int& w,
                                                                 const Int& r) {
  return cheapest_impl(contenders, w, r, true);
}

}  // namespace bribery
