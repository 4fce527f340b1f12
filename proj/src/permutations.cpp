#include "bribery/permutations.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bribery {

std::size_t factorial(std::size_t n) {
  std::size_t result = 1;
  for (std::size_t i = 2; i <= n; ++i) result *= i;
  return result;
}

std::vector<PreferenceOrder> all_orders(std::size_t m) {
  if (m > 8) throw CapExceeded("refusing to enumerate " + std::to_string(m) + "! orders");
  std::vector<CandidateId> ranking(m);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::vector<PreferenceOrder> orders;
  orders.reserve(factorial(m));
  do {
    orders.emplace_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return orders;
}

std::size_t order_index(const PreferenceOrder& order) {
  // Lehmer code read as a factorial-base number.
  const auto& r = order.ranking();
  const std::size_t m = r.size();
  std::size_t index = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (r[j] < r[i]) ++smaller_after;
    }
    index += smaller_after * factorial(m - 1 - i);
  }
  return index;
}

std::size_t kendall_distance(const PreferenceOrder& from, const PreferenceOrder& to) {
  if (from.size() != to.size()) throw std::invalid_argument("orders over different candidate counts");
  const std::size_t m = from.size();
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const CandidateId a = from.at(i);
      const CandidateId b = from.at(j);
      if (to.prefers(b, a)) ++discordant;
    }
  }
  return discordant;
}

std::vector<std::size_t> swap_path(const PreferenceOrder& from, const PreferenceOrder& to) {
  if (from.size() != to.size()) throw std::invalid_argument("orders over different candidate counts");
  std::vector<std::size_t> target_rank(from.size());
  for (std::size_t i = 0; i < to.size(); ++i) target_rank[to.at(i)] = i;
  std::vector<CandidateId> current = from.ranking();
  std::vector<std::size_t> path;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      if (target_rank[current[i]] > target_rank[current[i + 1]]) {
        std::swap(current[i], current[i + 1]);
        path.push_back(i);
        moved = true;
      }
    }
  }
  return path;
}

}  // namespace bribery
