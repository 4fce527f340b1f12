#pragma once

// Builders and a naive brute force shared by the test binaries. The brute
// force expands every voter, tries every subset within budget and every
// replacement ballot, and asks election-core who wins. It is deliberately
// independent of the oracle's search.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "bribery/election.hpp"
#include "bribery/permutations.hpp"
#include "bribery/query.hpp"

namespace test {

using namespace bribery;

inline VoterBlock ranked(std::vector<CandidateId> ranking, Int weight = 1, Int price = 1, Int mult = 1) {
  return VoterBlock{Ballot(PreferenceOrder(std::move(ranking))), price, weight, mult, {}};
}

inline VoterBlock approving(std::vector<bool> bits, Int weight = 1, Int price = 1, Int mult = 1) {
  return VoterBlock{Ballot(ApprovalVector(std::move(bits))), price, weight, mult, {}};
}

inline Election orders(std::size_t m, std::vector<VoterBlock> voters) {
  return Election::unnamed(m, std::move(voters), BallotKind::orders);
}

inline Election approvals(std::size_t m, std::vector<VoterBlock> voters) {
  return Election::unnamed(m, std::move(voters), BallotKind::approvals);
}

// Plurality voters listed by their top choice only; the rest follow by id.
inline Election by_tops(std::size_t m, const std::vector<CandidateId>& tops, const std::vector<Int>& weights = {},
                        const std::vector<Int>& prices = {}) {
  std::vector<VoterBlock> voters;
  for (std::size_t i = 0; i < tops.size(); ++i) {
    voters.push_back(VoterBlock{Ballot(order_with_top(m, tops[i])), prices.empty() ? Int(1) : prices[i],
                                weights.empty() ? Int(1) : weights[i], 1, {}});
  }
  return orders(m, std::move(voters));
}

inline BriberyQuery query(Election e, Rule rule, CandidateId p, Int k) {
  BriberyQuery q{std::move(e), std::move(rule), p, std::move(k)};
  return q;
}

// The three-voter Condorcet cycle a>b>c, b>c>a, c>a>b.
inline Election cycle() { return orders(3, {ranked({0, 1, 2}), ranked({1, 2, 0}), ranked({2, 0, 1})}); }

inline std::vector<std::vector<bool>> all_bit_vectors(std::size_t m) {
  std::vector<std::vector<bool>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<bool> bits(m);
    for (std::size_t c = 0; c < m; ++c) bits[c] = mask >> c & 1u;
    out.push_back(bits);
  }
  return out;
}

// Least cost of a successful bribery, found by trying everything.
inline std::optional<Int> brute_force_cost(const BriberyQuery& query) {
  const BriberyQuery q = normalized(query);
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  struct Voter {
    std::size_t block;
  };
  std::vector<Voter> units;
  for (std::size_t b = 0; b < e.voters().size(); ++b) {
    for (Int i = 0; i < e.voters()[b].multiplicity; ++i) units.push_back({b});
  }
  // replacement menu: ballots, or flip sets encoded as bit vectors of entries
  std::vector<std::vector<bool>> masks = all_bit_vectors(m);
  const auto every_order = e.kind() == BallotKind::orders ? all_orders(m) : std::vector<PreferenceOrder>{};
  const std::size_t menu = q.approval_flip || e.kind() == BallotKind::approvals ? masks.size() : every_order.size();

  std::optional<Int> best;
  std::vector<std::size_t> choice(units.size(), 0);  // 0 = untouched, otherwise menu index + 1
  std::function<void(std::size_t, Int)> go = [&](std::size_t u, Int cost) {
    if (cost > q.budget || (best && cost >= *best)) return;
    if (u == units.size()) {
      std::vector<VoterBlock> voters;
      for (std::size_t i = 0; i < units.size(); ++i) {
        VoterBlock v = e.voters()[units[i].block];
        v.multiplicity = 1;
        if (choice[i] > 0) {
          const std::size_t pick = choice[i] - 1;
          if (q.approval_flip) {
            std::vector<bool> bits = v.approvals().bits();
            for (std::size_t c = 0; c < m; ++c) bits[c] = bits[c] != masks[pick][c];
            v.ballot = ApprovalVector(bits);
          } else if (e.kind() == BallotKind::approvals) {
            v.ballot = ApprovalVector(masks[pick]);
          } else {
            v.ballot = every_order[pick];
          }
        }
        voters.push_back(std::move(v));
      }
      if (is_winner(e.with_voters(std::move(voters)), q.rule, q.target, q.unique())) best = cost;
      return;
    }
    choice[u] = 0;
    go(u + 1, cost);
    const VoterBlock& v = e.voters()[units[u].block];
    for (std::size_t pick = 0; pick < menu; ++pick) {
      Int price = v.price;
      if (q.approval_flip) {
        price = 0;
        for (std::size_t c = 0; c < m; ++c) {
          if (masks[pick][c]) price += v.entry_price(c);
        }
        if (pick == 0) continue;  // the empty flip set
      } else if (q.negative && every_order[pick].top() == q.target) {
        continue;
      }
      choice[u] = pick + 1;
      go(u + 1, cost + price);
    }
    choice[u] = 0;
  };
  go(0, 0);
  return best;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::size_t draw(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline Election random_orders(std::mt19937_64& g, std::size_t m, std::size_t voters, std::size_t max_weight = 1) {
  const auto all = all_orders(m);
  std::vector<VoterBlock> blocks;
  for (std::size_t i = 0; i < voters; ++i) {
    blocks.push_back(VoterBlock{Ballot(all[draw(g, 0, all.size() - 1)]), 1, Int(draw(g, 1, max_weight)), 1, {}});
  }
  return orders(m, std::move(blocks));
}

}  // namespace test
