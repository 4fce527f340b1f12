#include <doctest.h>

#include "bribery/oracle.hpp"
#include "support.hpp"

using namespace test;

namespace {

BriberyQuery make_change(Int budget) {
  // p=0, Big=1, MakeChange=2, SmallOne=3, SmallTwo=4
  std::vector<CandidateId> tops{1, 1, 0, 3, 4};
  std::vector<Int> weights{10, 2, 10, 9, 9};
  for (int i = 0; i < 10; ++i) {
    tops.push_back(2);
    weights.push_back(1);
  }
  BriberyQuery q = query(by_tops(5, tops, weights), Rule::plurality(), 0, std::move(budget));
  q.weighted = true;
  q.negative = true;
  return q;
}

}  // namespace

TEST_CASE("budget zero means already winning") {
  CHECK(oracle_bribery(query(by_tops(2, {0, 1}), Rule::plurality(), 0, 0)));
  CHECK_FALSE(oracle_bribery(query(by_tops(2, {1, 1, 0}), Rule::plurality(), 0, 0)));
}

TEST_CASE("MakeChange") {
  const auto w = oracle_bribery(make_change(3));
  REQUIRE(w);
  CHECK(w->bribed_voters() == 3);
  CHECK(verify_witness(make_change(3), *w));
  CHECK_FALSE(oracle_bribery(make_change(2)));
  bool touches = false;
  for (const auto& b : w->bribes) {
    if (b.block >= 5 || std::get<Ballot>(b.replacement) == Ballot(order_with_top(5, 2))) touches = true;
  }
  CHECK(touches);
}

TEST_CASE("Partition-shaped instance") {
  // s = (1,1,2), both weight and price s_i, budget S = 2
  BriberyQuery q = query(by_tops(2, {1, 1, 1}, {1, 1, 2}, {1, 1, 2}), Rule::plurality(), 0, 2);
  q.priced = q.weighted = true;
  CHECK(oracle_bribery(q));
}

TEST_CASE("verify_witness") {
  const BriberyQuery win = query(by_tops(2, {0}), Rule::plurality(), 0, 0);
  CHECK(verify_witness(win, BriberyWitness{}));
  const BriberyQuery q = query(by_tops(2, {1, 1}), Rule::plurality(), 0, 0);
  CHECK_FALSE(verify_witness(q, BriberyWitness{{Bribe{0, 1, Ballot(order_with_top(2, 0))}}}));
  BriberyQuery neg = query(by_tops(3, {1, 1, 0}), Rule::plurality(), 0, 1);
  neg.negative = true;
  CHECK_FALSE(verify_witness(neg, BriberyWitness{{Bribe{0, 1, Ballot(order_with_top(3, 0))}}}));
  CHECK(verify_witness(neg, BriberyWitness{{Bribe{0, 1, Ballot(order_with_top(3, 2))}}}));
  CHECK_THROWS_AS(verify_witness(q, BriberyWitness{{Bribe{7, 1, Ballot(order_with_top(2, 0))}}}), std::invalid_argument);
  CHECK_THROWS_AS(verify_witness(q, BriberyWitness{{Bribe{0, 2, Ballot(order_with_top(2, 0))}}}), std::invalid_argument);
}

TEST_CASE("manipulation") {
  const Rule borda = Rule::scoring(ScoringProtocol::borda(3));
  ManipulationQuery mq{orders(3, {ranked({1, 2, 0})}), borda, {1}, 0};
  const auto ballots = oracle_manipulation(mq);
  REQUIRE(ballots);
  REQUIRE(ballots->size() == 1);
  mq.mode = WinnerMode::unique;
  CHECK_FALSE(oracle_manipulation(mq));
  ManipulationQuery nobody{by_tops(2, {1}), Rule::plurality(), {}, 0};
  CHECK_FALSE(oracle_manipulation(nobody));
  nobody.target = 1;
  CHECK(oracle_manipulation(nobody));
  ManipulationQuery approval{approvals(3, {approving({false, true, true}, 2)}), Rule::approval(), {3}, 0};
  const auto a = oracle_manipulation(approval);
  REQUIRE(a);
  CHECK(std::get<ApprovalVector>((*a)[0]).approves(0));
}

TEST_CASE("distinct ballots collapse equivalent orders") {
  CHECK(distinct_ballots(3, Rule::plurality()).size() == 3);
  CHECK(distinct_ballots(3, Rule::veto()).size() == 3);
  CHECK(distinct_ballots(3, Rule::scoring(ScoringProtocol::borda(3))).size() == 6);
  CHECK(distinct_ballots(3, Rule::kemeny()).size() == 6);
  CHECK(distinct_ballots(3, Rule::approval()).size() == 8);
}

TEST_CASE("oracle equals brute force and returns least-cost witnesses") {
  auto g = rng(41);
  const std::vector<Rule> rules{Rule::plurality(), Rule::veto(), Rule::scoring(ScoringProtocol::borda(3)),
                                Rule::dodgson(), Rule::young(), Rule::kemeny(), Rule::approval()};
  for (int round = 0; round < 250; ++round) {
    const Rule& rule = rules[draw(g, 0, rules.size() - 1)];
    const std::size_t m = rule.kind == RuleKind::scoring ? 3 : draw(g, 1, 3);
    const bool unit = rule.kind == RuleKind::dodgson || rule.kind == RuleKind::young;
    std::vector<VoterBlock> voters;
    const auto all = all_orders(m);
    for (std::size_t i = 0, n = draw(g, 0, 3); i < n; ++i) {
      VoterBlock v = rule.kind == RuleKind::approval ? approving(all_bit_vectors(m)[draw(g, 0, (1u << m) - 1)])
                                                     : VoterBlock{Ballot(all[draw(g, 0, all.size() - 1)]), 1, 1, 1, {}};
      v.weight = unit ? 1 : draw(g, 0, 3);
      v.price = draw(g, 0, 3);
      v.multiplicity = draw(g, 1, 2);
      voters.push_back(v);
    }
    const Election e = Election::unnamed(m, voters, rule.ballot_kind());
    BriberyQuery q = query(e, rule, draw(g, 0, m - 1), draw(g, 0, 4));
    q.priced = draw(g, 0, 1);
    q.weighted = !unit && draw(g, 0, 1);
    q.negative = rule.kind == RuleKind::plurality && draw(g, 0, 2) == 0;
    q.approval_flip = rule.kind == RuleKind::approval && draw(g, 0, 1);
    q.mode = draw(g, 0, 1) ? WinnerMode::unique : WinnerMode::nonunique;
    INFO(q.describe());
    const auto best = brute_force_cost(q);
    const auto w = oracle_bribery(q);
    REQUIRE(w.has_value() == best.has_value());
    if (w) {
      CHECK(verify_witness(q, *w));
      CHECK(witness_cost(normalized(q), *w) == *best);
    }
  }
}

TEST_CASE("oracle ignores voter order and block splitting") {
  auto g = rng(42);
  for (int round = 0; round < 100; ++round) {
    std::vector<VoterBlock> blocks, split;
    for (std::size_t i = 0, n = draw(g, 0, 3); i < n; ++i) {
      VoterBlock v{Ballot(order_with_top(3, draw(g, 0, 2))), Int(draw(g, 0, 3)), Int(draw(g, 0, 3)), Int(draw(g, 1, 3)), {}};
      blocks.push_back(v);
      for (Int j = 0; j < v.multiplicity; ++j) {
        VoterBlock one = v;
        one.multiplicity = 1;
        split.insert(split.begin(), one);
      }
    }
    BriberyQuery a = query(orders(3, blocks), Rule::plurality(), 0, draw(g, 0, 5));
    a.priced = a.weighted = true;
    BriberyQuery b = a;
    b.election = orders(3, split);
    CHECK(oracle_bribery(a).has_value() == oracle_bribery(b).has_value());
  }
}

TEST_CASE("caps") {
  OracleBudget tight;
  tight.max_candidates = 2;
  CHECK_THROWS_AS(oracle_bribery(query(by_tops(3, {1}), Rule::plurality(), 0, 1), tight), CapExceeded);
}
