// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "bribery/cli.hpp"
#include "bribery/ilp.hpp"
#include "bribery/oracle.hpp"
#include "bribery/reductions.hpp"
#include "bribery/solvers.hpp"
#include "support.hpp"

using namespace test;

namespace {

struct Result {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << "first failure: " << why << "; ";
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

// ---------------------------------------------------------------- 1

void oracle_sweep(Result& r) {
  CheckOptions options;
  options.seed = 20261018;
  options.instances = 1000;
  options.max_candidates = 3;
  options.max_voters = 6;
  options.dump_dir = "acceptance-mismatches";
  std::ostringstream log;
  const auto solvers = default_solvers();
  const CheckSummary s = check_instances(options, solvers, log);
  r.expect(s.instances >= 1000, "fewer than 1000 instances");
  r.expect(s.mismatches == 0, std::to_string(s.mismatches) + " mismatches");
  std::set<std::string> families;
  for (const auto& solver : solvers) {
    const auto it = s.per_solver.find(solver.id);
    if (it == s.per_solver.end() || it->second == 0) r.fail(solver.id + " never applied");
  }
  r.detail << s.instances << " instances, " << s.queries << " queries, " << s.comparisons << " comparisons over "
           << solvers.size() << " solvers, " << s.skipped << " over caps, " << s.mismatches << " mismatches";
}

// ---------------------------------------------------------------- 2

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

// Every negative bribery of exactly `size` single voters that makes p win.
std::vector<BriberyWitness> all_negative_bribes(const BriberyQuery& q, std::size_t size) {
  const Election& e = q.election;
  const std::size_t m = e.candidate_count();
  const std::size_t n = e.voters().size();
  std::vector<BriberyWitness> found;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (chosen.size() == size) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < size; ++i) combos *= m - 1;
      for (std::size_t code = 0; code < combos; ++code) {
        BriberyWitness w;
        auto voters = e.voters();
        std::size_t rest = code;
        for (auto v : chosen) {
          const CandidateId top = 1 + rest % (m - 1);
          rest /= m - 1;
          voters[v].ballot = order_with_top(m, top);
          w.bribes.push_back(Bribe{v, 1, voters[v].ballot});
        }
        const auto won = winners(e.with_voters(voters), q.rule);
        if (std::find(won.begin(), won.end(), q.target) != won.end()) found.push_back(w);
      }
      return;
    }
    for (std::size_t v = from; v < n; ++v) {
      chosen.push_back(v);
      pick(v + 1);
      chosen.pop_back();
    }
  };
  pick(0);
  return found;
}

void micro_examples(Result& r) {
  // (a) weights: a has two weight-4 voters, b one weight-5 voter, p one weight-2 voter
  BriberyQuery a = query(by_tops(3, {1, 1, 2, 0}, {4, 4, 5, 2}), Rule::plurality(), 0, 1);
  a.weighted = true;
  const Ballot for_p(order_with_top(3, 0));
  r.expect(solve_plurality_weighted(a).has_value(), "(a) weighted greedy infeasible at k=1");
  r.expect(oracle_bribery(a).has_value(), "(a) oracle infeasible at k=1");
  r.expect(verify_witness(a, BriberyWitness{{Bribe{0, 1, for_p}}}), "(a) weight-4 bribe fails");
  r.expect(!verify_witness(a, BriberyWitness{{Bribe{2, 1, for_p}}}), "(a) weight-5 bribe succeeds");

  // (b) price equals weight, 10 and 7
  BriberyQuery b = query(by_tops(2, {1, 1}, {10, 7}, {10, 7}), Rule::plurality(), 0, 10);
  b.priced = b.weighted = true;
  r.expect(solve_plurality_unary_prices(b).has_value(), "(b) price DP infeasible at k=10");
  r.expect(oracle_bribery(b).has_value(), "(b) oracle infeasible at k=10");
  b.budget = 9;
  r.expect(!solve_plurality_unary_prices(b).has_value(), "(b) price DP feasible at k=9");
  r.expect(!oracle_bribery(b).has_value(), "(b) oracle feasible at k=9");

  // (c) MakeChange
  const auto w = oracle_bribery(make_change(3));
  r.expect(w && w->bribed_voters() == 3 && verify_witness(make_change(3), *w), "(c) no 3-voter witness");
  r.expect(!oracle_bribery(make_change(2)).has_value(), "(c) oracle feasible with 2 bribes");
  for (std::size_t size = 0; size <= 2; ++size) {
    r.expect(all_negative_bribes(make_change(3), size).empty(), "(c) brute force finds a smaller bribe");
  }
  const auto minimal = all_negative_bribes(make_change(3), 3);
  r.expect(!minimal.empty(), "(c) brute force finds no 3-voter bribe");
  const Ballot for_change(order_with_top(5, 2));
  for (const auto& m : minimal) {
    bool touches = false;
    for (const auto& bribe : m.bribes) {
      if (bribe.block >= 5 || std::get<Ballot>(bribe.replacement) == for_change) touches = true;
    }
    r.expect(touches, "(c) a minimal bribe avoids MakeChange");
  }
  r.detail << "(a) (b) (c) checked, " << minimal.size() << " minimal MakeChange bribes";
}

// ---------------------------------------------------------------- 3

bool has_partition(const std::vector<Int>& values) {
  Int total = 0;
  for (const auto& v : values) total += v;
  if (total % 2 != 0) return false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << values.size()); ++mask) {
    Int part = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (mask >> i & 1u) part += values[i];
    }
    if (2 * part == total) return true;
  }
  return false;
}

bool has_cover(const X3CInstance& x) {
  const std::size_t n = x.sets.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> hits(3 * x.t, 0);
    std::size_t chosen = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      ++chosen;
      for (std::size_t e : x.sets[i]) {
        if (e >= hits.size() || hits[e]++) ok = false;
      }
    }
    if (ok && chosen == x.t && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) return true;
  }
  return false;
}

// Plain approval bribery where every bribed voter approves only p. Replacing
// any other bribed ballot by this one never lowers p or raises a rival, so
// this decides the instance exactly.
bool approval_by_dominance(const BriberyQuery& q) {
  const Election& e = q.election;
  const auto& voters = e.voters();
  const std::size_t m = e.candidate_count();
  std::vector<Int> score(m, 0);
  for (const auto& v : voters) {
    for (CandidateId c = 0; c < m; ++c) {
      if (v.approvals().approves(c)) score[c] += v.multiplicity;
    }
  }
  std::function<bool(std::size_t, Int)> go = [&](std::size_t b, Int left) {
    if (b == voters.size()) {
      for (CandidateId c = 0; c < m; ++c) {
        if (c != q.target && (q.unique() ? score[c] >= score[q.target] : score[c] > score[q.target])) return false;
      }
      return true;
    }
    const auto& v = voters[b];
    for (Int count = 0; count <= left && count <= v.multiplicity; ++count) {
      for (CandidateId c = 0; c < m; ++c) {
        if (v.approvals().approves(c)) score[c] -= count;
      }
      score[q.target] += count;
      const bool ok = go(b + 1, left - count);
      score[q.target] -= count;
      for (CandidateId c = 0; c < m; ++c) {
        if (v.approvals().approves(c)) score[c] += count;
      }
      if (ok) return true;
    }
    return false;
  };
  return go(0, q.budget);
}

// Triple lists over {0..3t-1} where each triple introduces unseen elements as
// the next free labels; every instance appears up to renaming.
void each_x3c(std::size_t t, std::size_t most, const std::function<void(const X3CInstance&)>& visit) {
  const std::size_t ground = 3 * t;
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t a = 0; a < ground; ++a) {
    for (std::size_t b = a + 1; b < ground; ++b) {
      for (std::size_t c = b + 1; c < ground; ++c) triples.push_back({a, b, c});
    }
  }
  X3CInstance x{t, {}};
  std::function<void(std::size_t)> grow = [&](std::size_t fresh) {
    visit(x);
    if (x.sets.size() == most) return;
    for (const auto& s : triples) {
      std::size_t next = fresh;
      bool ok = true;
      for (std::size_t e : s) {
        if (e >= fresh) {
          if (e != next) ok = false;
          ++next;
        }
      }
      if (!ok) continue;
      x.sets.push_back(s);
      grow(next);
      x.sets.pop_back();
    }
  };
  grow(0);
}

void reductions(Result& r) {
  std::size_t partitions = 0, reduced = 0, covers = 0, by_oracle = 0, by_dominance = 0;
  std::vector<Int> values;
  std::function<void(Int)> grow = [&](Int from) {
    if (!values.empty()) {
      ++partitions;
      const PartitionInstance p{values};
      const bool yes = has_partition(values);
      const BriberyQuery qs[] = {partition_to_weighted_dollar_plurality(p), partition_to_negative_weighted(p),
                                 partition_to_approval_flip_weighted(p)};
      const char* names[] = {"plurality-wd", "negative-weighted", "approval-flip"};
      for (int i = 0; i < 3; ++i) {
        ++reduced;
        if (oracle_bribery(qs[i]).has_value() != yes) {
          std::ostringstream why;
          why << names[i] << " on";
          for (const auto& v : values) why << ' ' << v;
          r.fail(why.str());
        }
      }
    }
    if (values.size() == 8) return;
    for (Int v = from; v <= 6; ++v) {
      values.push_back(v);
      grow(v);
      values.pop_back();
    }
  };
  grow(0);

  for (std::size_t t = 1; t <= 4; ++t) {
    each_x3c(t, 4, [&](const X3CInstance& x) {
      ++covers;
      const bool yes = has_cover(x);
      const BriberyQuery q = x3c_to_approval(x);
      const bool dominance = approval_by_dominance(q);
      ++by_dominance;
      if (dominance != yes) r.fail("x3c t=" + std::to_string(t) + " by dominance");
      if (q.election.candidate_count() <= 7) {
        ++by_oracle;
        if (oracle_bribery(q).has_value() != yes) r.fail("x3c t=" + std::to_string(t) + " by oracle");
      }
    });
  }

  // The dominance search is checked against the oracle on random approval
  // instances in both modes before it is trusted above.
  auto g = rng(3);
  for (int round = 0; round < 300; ++round) {
    const std::size_t m = draw(g, 2, 4);
    std::vector<VoterBlock> voters;
    for (std::size_t i = 0, n = draw(g, 0, 4); i < n; ++i) {
      std::vector<bool> bits(m);
      for (std::size_t c = 0; c < m; ++c) bits[c] = draw(g, 0, 1);
      voters.push_back(approving(bits, 1, 1, draw(g, 1, 3)));
    }
    BriberyQuery q = query(approvals(m, voters), Rule::approval(), draw(g, 0, m - 1), draw(g, 0, 3));
    if (draw(g, 0, 1)) q.mode = WinnerMode::unique;
    if (approval_by_dominance(q) != oracle_bribery(q).has_value()) r.fail("dominance search disagrees with oracle");
  }

  std::size_t primes = 0;
  for (int round = 0; round < 200; ++round) {
    PartitionInstance p;
    for (std::size_t i = 0, n = draw(g, 1, 6); i < n; ++i) p.values.push_back(draw(g, 0, 12));
    const auto t = partition_prime_transform(p);
    ++primes;
    r.expect(t.balanced(), "transformed instance not balanced");
    r.expect(has_partition(p.values) == has_partition(t.values), "transform changed the answer");
  }
  r.detail << partitions << " partition instances (" << reduced << " reduced queries), " << covers
           << " x3c instances (" << by_oracle << " by oracle, " << by_dominance << " by dominance search), " << primes
           << " transforms";
}

// ---------------------------------------------------------------- 4

bool contains(const std::vector<CandidateId>& v, CandidateId c) { return std::find(v.begin(), v.end(), c) != v.end(); }

void score_models(Result& r) {
  const auto every = all_orders(3);
  auto g = rng(4);
  std::size_t elections = 0;
  for (int round = 0; round < 500; ++round) {
    std::vector<VoterBlock> voters;
    for (std::size_t i = 0, n = draw(g, 0, 5); i < n; ++i) voters.push_back(VoterBlock{Ballot(every[draw(g, 0, 5)]), 1, 1, 1, {}});
    const Election e = orders(3, voters);
    ++elections;
    const auto kemeny = kemeny_winners(e);
    for (CandidateId c = 0; c < 3; ++c) {
      if (ilp_dodgson_score(e, c) != dodgson_score(e, c)) r.fail("dodgson score");
      if (ilp_young_score(e, c) != young_score(e, c)) r.fail("young score");
      if (kemeny_bribery_feasible(query(e, Rule::kemeny(), c, 0)) != contains(kemeny, c)) r.fail("kemeny at k=0");
    }
  }
  r.expect(dodgson_prime_winners(cycle()) == std::vector<CandidateId>{0, 1, 2}, "cycle winners");
  std::size_t condorcet = 0;
  while (condorcet < 100) {
    std::vector<VoterBlock> voters;
    for (std::size_t i = 0, n = draw(g, 1, 7); i < n; ++i) voters.push_back(VoterBlock{Ballot(every[draw(g, 0, 5)]), 1, 1, 1, {}});
    const Election e = orders(3, voters);
    for (CandidateId c = 0; c < 3; ++c) {
      if (!is_condorcet_winner(e, c)) continue;
      ++condorcet;
      if (dodgson_prime_winners(e) != std::vector<CandidateId>{c}) r.fail("Condorcet winner not sole winner");
    }
  }
  r.detail << elections << " sampled elections, " << condorcet << " Condorcet checks";
}

// ---------------------------------------------------------------- 5

void dichotomy(Result& r) {
  struct Row {
    std::vector<Int> alpha;
    BriberyVariant variant;
    Complexity expected;
  };
  const BriberyVariant weighted{false, true, Unary::none};
  const BriberyVariant both{true, true, Unary::none};
  const BriberyVariant priced{true, false, Unary::none};
  const BriberyVariant unary{true, true, Unary::weights};
  const auto P = Complexity::polynomial;
  const auto NP = Complexity::np_complete;
  const std::vector<Row> rows{
      {{1, 0}, both, NP},          {{1, 0, 0}, weighted, P},  {{1, 0, 0}, both, NP},
      {{1, 0, 0, 0}, weighted, P}, {{2, 1, 0}, weighted, NP}, {{3, 2, 1, 0}, weighted, NP},
      {{1, 0, 0}, priced, P},      {{2, 1, 0}, priced, P},    {{5, 3, 3, 0}, priced, P},
      {{1, 0, 0}, unary, P},       {{2, 1, 0}, unary, P},     {{4, 4, 1}, unary, P},
  };
  std::size_t row = 0;
  for (const auto& x : rows) {
    ++row;
    if (classify_dichotomy(ScoringProtocol(x.alpha), x.variant).complexity != x.expected) {
      r.fail("row " + std::to_string(row));
    }
  }
  r.detail << rows.size() << " rows";
}

// ---------------------------------------------------------------- 6

Rule random_order_rule(std::mt19937_64& g, std::size_t m) {
  switch (draw(g, 0, 3)) {
    case 0: return Rule::plurality();
    case 1: return Rule::veto();
    case 2: return Rule::scoring(ScoringProtocol::borda(m));
    default: return Rule::kemeny();
  }
}

void dtt_and_embedding(Result& r) {
  auto g = rng(6);
  std::size_t dtt = 0, queries = 0, embedded = 0;
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = draw(g, 2, 3);
    const bool approval = draw(g, 0, 4) == 0;
    Election e = approval ? [&] {
      std::vector<VoterBlock> voters;
      for (std::size_t i = 0, n = draw(g, 0, 3); i < n; ++i) {
        std::vector<bool> bits(m);
        for (std::size_t c = 0; c < m; ++c) bits[c] = draw(g, 0, 1);
        voters.push_back(approving(bits, draw(g, 1, 3)));
      }
      return approvals(m, voters);
    }()
                          : random_orders(g, m, draw(g, 0, 3), 3);
    auto voters = e.voters();
    for (auto& v : voters) v.multiplicity = draw(g, 1, 2);
    BriberyQuery q = query(e.with_voters(voters), approval ? Rule::approval() : random_order_rule(g, m),
                           draw(g, 0, m - 1), draw(g, 0, 2));
    q.weighted = true;
    if (draw(g, 0, 1)) q.mode = WinnerMode::unique;
    const auto pieces = bribery_to_manipulation_dtt(q, 8);
    bool any = false;
    for (const auto& mq : pieces) {
      ++queries;
      if (oracle_manipulation(mq)) {
        any = true;
        break;
      }
    }
    ++dtt;
    if (any != oracle_bribery(q).has_value()) r.fail("dtt disjunction, round " + std::to_string(round));
  }
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = draw(g, 2, 3);
    ManipulationQuery mq{random_orders(g, m, draw(g, 0, 3), 3), random_order_rule(g, m), {}, draw(g, 0, m - 1)};
    for (std::size_t i = 0, n = draw(g, 0, 2); i < n; ++i) mq.manipulators.push_back(draw(g, 1, 3));
    if (draw(g, 0, 1)) mq.mode = WinnerMode::unique;
    ++embedded;
    if (oracle_manipulation(mq).has_value() != oracle_bribery(manipulation_to_dollar_bribery(mq)).has_value()) {
      r.fail("embedding, round " + std::to_string(round));
    }
  }
  r.detail << dtt << " bribery instances (" << queries << " manipulation queries), " << embedded << " embeddings";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    void (*run)(Result&);
  };
  const Criterion criteria[] = {
      {"oracle equivalence sweep", 300, oracle_sweep},
      {"worked micro-examples", 0, micro_examples},
      {"reduction soundness", 120, reductions},
      {"score-model equivalence", 180, score_models},
      {"dichotomy table", 0, dichotomy},
      {"bribe-set and embedding reductions", 0, dtt_and_embedding},
  };
  int failed = 0;
  int number = 0;
  for (const auto& c : criteria) {
    ++number;
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && seconds > c.limit_s) r.fail("took longer than " + std::to_string(int(c.limit_s)) + " s");
    if (!r.ok) ++failed;
    std::printf("%s  %d %s: %s (%.1f s)\n", r.ok ? "PASS" : "FAIL", number, c.name, r.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
