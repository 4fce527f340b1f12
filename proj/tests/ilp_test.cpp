#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>

#include "bribery/ilp.hpp"
#include "bribery/oracle.hpp"
#include "support.hpp"

using namespace test;

namespace {

const Rule borda3 = Rule::scoring(ScoringProtocol::borda(3));

bool grid_feasible(const IlpModel& model) {
  const auto& vars = model.variables();
  Assignment x(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) x[i] = *vars[i].lower;
  while (true) {
    if (satisfies(model, x)) return true;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (x[i] < *vars[i].upper) {
        ++x[i];
        break;
      }
      x[i] = *vars[i].lower;
    }
    if (i == vars.size()) return false;
  }
}

// Every multiset of at most `most` ballots over the 3! orders.
std::vector<Election> small_elections(std::size_t most) {
  const auto every = all_orders(3);
  std::vector<Election> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    std::vector<VoterBlock> voters;
    for (auto i : pick) voters.push_back(VoterBlock{Ballot(every[i]), 1, 1, 1, {}});
    out.push_back(orders(3, std::move(voters)));
    if (pick.size() == most) return;
    for (std::size_t i = from; i < every.size(); ++i) {
      pick.push_back(i);
      grow(i);
      pick.pop_back();
    }
  };
  grow(0);
  return out;
}

std::map<std::vector<CandidateId>, std::size_t> bfs_distances(const PreferenceOrder& start) {
  std::map<std::vector<CandidateId>, std::size_t> dist{{start.ranking(), 0}};
  std::deque<PreferenceOrder> queue{start};
  while (!queue.empty()) {
    const PreferenceOrder o = queue.front();
    queue.pop_front();
    for (std::size_t pos = 0; pos + 1 < o.size(); ++pos) {
      const PreferenceOrder next = o.swapped(pos);
      if (dist.emplace(next.ranking(), dist[o.ranking()] + 1).second) queue.push_back(next);
    }
  }
  return dist;
}

bool contains(const std::vector<CandidateId>& v, CandidateId c) { return std::find(v.begin(), v.end(), c) != v.end(); }

}  // namespace

TEST_CASE("engine examples") {
  IlpModel one;
  one.add_variable("x", 0, 5);
  const auto x = ilp_feasible(one);
  REQUIRE(x);
  CHECK((*x)[0] == 0);

  IlpModel sum;
  sum.add_variable("x", 0, 1);
  sum.add_variable("y", 0, 1);
  sum.add_constraint({{0, 1}, {1, 1}}, Relation::eq, 3);
  CHECK_FALSE(ilp_feasible(sum));

  IlpModel open;
  open.add_variable("x", 0, std::nullopt);
  CHECK_THROWS_AS(ilp_feasible(open), std::invalid_argument);

  IlpModel strict;
  strict.add_variable("x", 0, 3);
  strict.add_strictly_greater({{0, 2}}, 5);
  const auto s = ilp_feasible(strict);
  REQUIRE(s);
  CHECK((*s)[0] == 3);
}

TEST_CASE("engine agrees with grid enumeration") {
  auto g = rng(61);
  int feasible = 0;
  for (int round = 0; round < 400; ++round) {
    IlpModel model;
    const std::size_t n = draw(g, 1, 6);
    std::size_t grid = 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t width = draw(g, 0, 10);
      while (grid * (width + 1) > 200'000) --width;
      grid *= width + 1;
      const std::int64_t lo = draw(g, -5, 3);
      model.add_variable("x" + std::to_string(i), lo, lo + width);
    }
    for (std::size_t c = 0, rows = draw(g, 0, 4); c < rows; ++c) {
      std::vector<LinearTerm> terms;
      for (std::size_t i = 0; i < n; ++i) {
        if (draw(g, 0, 2)) terms.push_back({i, static_cast<std::int64_t>(draw(g, -3, 3))});
      }
      model.add_constraint(terms, static_cast<Relation>(draw(g, 0, 2)), draw(g, -8, 8));
    }
    const auto found = ilp_feasible(model);
    CHECK(found.has_value() == grid_feasible(model));
    if (found) {
      ++feasible;
      CHECK(satisfies(model, *found));
    }
  }
  CHECK(feasible > 50);
}

TEST_CASE("order tables") {
  for (std::size_t m = 1; m <= 4; ++m) {
    const OrderTables t(m);
    for (std::size_t i = 0; i < t.count(); ++i) {
      const auto dist = bfs_distances(t.orders[i]);
      for (std::size_t j = 0; j < t.count(); ++j) {
        CHECK(t.switches[i][j] == dist.at(t.orders[j].ranking()));
        CHECK(t.switches[i][j] == t.switches[j][i]);
        CHECK(t.switches[i][j] + t.agreements[i][j] == m * (m - 1) / 2);
      }
      CHECK(t.switches[i][i] == 0);
      for (CandidateId r = 0; r < m; ++r) {
        CHECK(t.orders[i].at(t.wh[r][i]) == r);
        for (CandidateId q = 0; q < m; ++q) {
          if (r != q) CHECK(t.who(r, q, i) == -t.who(q, r, i));
        }
      }
    }
  }
}

TEST_CASE("scoring model examples") {
  const auto won = query(orders(3, {ranked({2, 0, 1}), ranked({2, 1, 0})}), borda3, 2, 0);
  const auto model = build_scoring_bribery_model(won);
  const auto x = ilp_feasible(model);
  REQUIRE(x);
  CHECK(decode_bribes(won, OrderTables(3), *x).bribes.empty());

  const auto lost = query(orders(3, {ranked({0, 1, 2}, 1, 1, 2)}), borda3, 2, 1);
  CHECK(ilp_feasible(build_scoring_bribery_model(lost)).has_value() == oracle_bribery(lost).has_value());
  auto none = lost;
  none.budget = 0;
  CHECK_FALSE(ilp_feasible(build_scoring_bribery_model(none)));

  auto big = query(orders(4, {ranked({0, 1, 2, 3})}), Rule::plurality(), 0, 0);
  CHECK_THROWS_AS(build_scoring_bribery_model(big), CapExceeded);
}

TEST_CASE("score model examples") {
  const auto cyc = query(cycle(), Rule::dodgson(), 0, 0);
  CHECK(ilp_feasible(build_dodgson_score_bribery_model(cyc, 1)));
  CHECK_FALSE(ilp_feasible(build_dodgson_score_bribery_model(cyc, 0)));
  CHECK(ilp_feasible(build_young_score_bribery_model(cyc, 2)));
  CHECK_FALSE(ilp_feasible(build_young_score_bribery_model(cyc, 1)));

  const auto condorcet = query(orders(3, {ranked({0, 1, 2}), ranked({0, 2, 1}), ranked({1, 0, 2})}), Rule::dodgson(), 0, 0);
  CHECK(ilp_feasible(build_dodgson_score_bribery_model(condorcet, 0)));
  CHECK(ilp_feasible(build_young_score_bribery_model(condorcet, 0)));

  CHECK(min_bribe_for_score(condorcet, {ScoreGoal::Kind::dodgson, 0}) == Int(0));
  CHECK(min_bribe_for_score(cyc, {ScoreGoal::Kind::dodgson, 0}) == Int(1));
  CHECK(min_bribe_for_score(cyc, {ScoreGoal::Kind::dodgson, 1}) == Int(0));
  CHECK(min_bribe_for_score(cyc, {ScoreGoal::Kind::young, 0}) == Int(1));
}

TEST_CASE("kemeny models") {
  const auto unanimous = query(orders(3, {ranked({1, 0, 2}, 1, 1, 3)}), Rule::kemeny(), 1, 0);
  CHECK(build_kemeny_bribery_models(unanimous).size() == 2);
  CHECK(kemeny_bribery_feasible(unanimous));
  const auto last = query(orders(3, {ranked({0, 1, 2})}), Rule::kemeny(), 2, 1);
  CHECK(kemeny_bribery_feasible(last));
  auto stuck = last;
  stuck.budget = 0;
  CHECK_FALSE(kemeny_bribery_feasible(stuck));
}

TEST_CASE("dodgson prime winners") {
  CHECK(dodgson_prime_winners(cycle()) == std::vector<CandidateId>{0, 1, 2});
  CHECK(dodgson_prime_winners(orders(3, {ranked({0, 1, 2}), ranked({0, 2, 1}), ranked({1, 0, 2})})) ==
        std::vector<CandidateId>{0});
  CHECK(dodgson_prime_winners(orders(3, {ranked({2, 0, 1})})) == std::vector<CandidateId>{2});
  CHECK(dodgson_prime_winners(orders(3, {})).empty());
}

TEST_CASE("full dodgson and young bribery") {
  CHECK(solve_full_dodgson_or_young_bribery(query(cycle(), Rule::dodgson(), 0, 0)));
  const auto two = query(orders(2, {ranked({1, 0}, 1, 1, 2)}), Rule::young(), 0, 1);
  CHECK(solve_full_dodgson_or_young_bribery(two).has_value() == oracle_bribery(two).has_value());
  CHECK(solve_full_dodgson_or_young_bribery(two));

  auto g = rng(62);
  for (int round = 0; round < 150; ++round) {
    const Rule rule = draw(g, 0, 1) ? Rule::dodgson() : Rule::young();
    const Election base = random_orders(g, draw(g, 2, 3), draw(g, 0, 3), 1);
    const bool priced = draw(g, 0, 1);
    auto voters = base.voters();
    for (auto& v : voters) {
      v.multiplicity = draw(g, 1, 2);
      if (priced) v.price = draw(g, 0, 3);
    }
    auto q = query(base.with_voters(std::move(voters)), rule, 0, draw(g, 0, 3));
    q.priced = priced;
    q.target = draw(g, 0, q.election.candidate_count() - 1);
    if (draw(g, 0, 1)) q.mode = WinnerMode::unique;
    const auto got = solve_full_dodgson_or_young_bribery(q);
    CHECK(got.has_value() == oracle_bribery(q).has_value());
    if (got) CHECK(verify_witness(q, *got));
  }
}

TEST_CASE("decoded plans replay") {
  auto g = rng(63);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    auto q = query(random_orders(g, 3, draw(g, 1, 4), 1), Rule::dodgson(), draw(g, 0, 2), draw(g, 0, 2));
    const Int t = draw(g, 0, 3);
    if (const auto x = ilp_feasible(build_dodgson_score_bribery_model(q, t))) {
      CHECK(check_dodgson_plan(q, t, decode_dodgson_plan(q, *x)));
      ++checked;
    }
    CHECK(ilp_feasible(build_dodgson_score_bribery_model(q, t)).has_value() ==
          oracle_score_bribery(q, {ScoreGoal::Kind::dodgson, t}).has_value());
    q.rule = Rule::young();
    if (const auto x = ilp_feasible(build_young_score_bribery_model(q, t))) {
      CHECK(check_young_plan(q, t, decode_young_plan(q, *x)));
      ++checked;
    }
    CHECK(ilp_feasible(build_young_score_bribery_model(q, t)).has_value() ==
          oracle_score_bribery(q, {ScoreGoal::Kind::young, t}).has_value());
    q.rule = borda3;
    q.mode = draw(g, 0, 1) ? WinnerMode::unique : WinnerMode::nonunique;
    const auto s = ilp_feasible(build_scoring_bribery_model(q));
    if (s) CHECK(verify_witness(q, decode_bribes(q, OrderTables(3), *s)));
    CHECK(s.has_value() == oracle_bribery(q).has_value());
  }
  CHECK(checked > 100);
}

TEST_CASE("zero budget matches election-core") {
  for (const auto& e : small_elections(5)) {
    const auto kemeny = kemeny_winners(e);
    const auto by_borda = winners(e, borda3);
    for (CandidateId c = 0; c < 3; ++c) {
      CHECK(ilp_dodgson_score(e, c) == dodgson_score(e, c));
      CHECK(ilp_young_score(e, c) == young_score(e, c));
      CHECK(kemeny_bribery_feasible(query(e, Rule::kemeny(), c, 0)) == contains(kemeny, c));
      CHECK(ilp_feasible(build_scoring_bribery_model(query(e, borda3, c, 0))).has_value() == contains(by_borda, c));
    }
  }
}
