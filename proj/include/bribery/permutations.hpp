#pragma once

#include <cstddef>
#include <vector>

#include "bribery/election.hpp"

namespace bribery {

std::size_t factorial(std::size_t n);

// All m! orders in lexicographic order of their rankings.
std::vector<PreferenceOrder> all_orders(std::size_t m);

// Position of `order` in all_orders(order.size()).
std::size_t order_index(const PreferenceOrder& order);

// Minimum number of adjacent swaps turning `from` into `to`
// (Kendall tau distance).
std::size_t kendall_distance(const PreferenceOrder& from, const PreferenceOrder& to);

// Adjacent-swap positions that bubble `from` into `to`; applying them in order
// with PreferenceOrder::swapped reproduces `to`. Length equals the distance.
std::vector<std::size_t> swap_path(const PreferenceOrder& from, const PreferenceOrder& to);

}  // namespace bribery
