#include "bribery/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bribery/ilp.hpp"
#include "bribery/io.hpp"
#include "bribery/oracle.hpp"
#include "bribery/permutations.hpp"
#include "bribery/reductions.hpp"

namespace bribery {

namespace {

constexpr std::size_t table_cap = 1 << 16;

bool is(const BriberyQuery& q, RuleKind kind) { return q.rule.kind == kind; }

bool small_orders(const BriberyQuery& q) {
  return q.election.kind() == BallotKind::orders && q.election.candidate_count() <= 3;
}

Int price_mass(const BriberyQuery& q) {
  Int total = 0;
  for (const auto& v : q.election.voters()) {
    if (!q.priced) {
      total += v.multiplicity;
    } else if (v.entry_prices.empty()) {
      total += v.price * v.multiplicity * (q.approval_flip ? Int(q.election.candidate_count()) : Int(1));
    } else {
      for (const auto& e : v.entry_prices) total += e * v.multiplicity;
    }
  }
  return total;
}

Int weight_mass(const BriberyQuery& q) { return q.weighted ? q.election.total_weight() : q.election.voter_count(); }

// Same instance with explicit unit prices and weights, for solvers that take
// priced and weighted queries only.
BriberyQuery lifted(const BriberyQuery& q) {
  BriberyQuery out = normalized(q);
  out.priced = true;
  out.weighted = true;
  return out;
}

}  // namespace

std::vector<NamedSolver> default_solvers() {
  std::vector<NamedSolver> s;
  auto plain = [](const BriberyQuery& q) { return !q.priced && !q.weighted && !q.negative; };
  s.push_back({"plurality-greedy", "greedy",
               [=](const BriberyQuery& q) { return is(q, RuleKind::plurality) && plain(q); }, solve_plurality_basic});
  s.push_back({"veto-greedy", "greedy", [=](const BriberyQuery& q) { return is(q, RuleKind::veto) && plain(q); },
               solve_veto});
  s.push_back({"plurality-priced-sweep", "sweep",
               [](const BriberyQuery& q) { return is(q, RuleKind::plurality) && !q.weighted && !q.negative; },
               solve_plurality_priced});
  s.push_back({"plurality-weighted-sweep", "sweep",
               [](const BriberyQuery& q) { return is(q, RuleKind::plurality) && !q.priced && !q.negative; },
               solve_plurality_weighted});
  s.push_back({"plurality-negative", "sweep",
               [](const BriberyQuery& q) { return is(q, RuleKind::plurality) && q.negative && !q.weighted; },
               solve_plurality_negative_priced});
  s.push_back({"plurality-dp-prices", "dp-prices",
               [](const BriberyQuery& q) {
                 return is(q, RuleKind::plurality) && !q.negative && price_mass(q) <= table_cap;
               },
               [](const BriberyQuery& q) { return solve_plurality_unary_prices(lifted(q)); }});
  s.push_back({"plurality-dp-weights", "dp-weights",
               [](const BriberyQuery& q) {
                 return is(q, RuleKind::plurality) && !q.negative && weight_mass(q) <= table_cap;
               },
               [](const BriberyQuery& q) { return solve_plurality_unary_weights(lifted(q)); }});
  s.push_back({"flip-dp-prices", "dp-prices",
               [](const BriberyQuery& q) { return q.approval_flip && price_mass(q) <= table_cap; },
               [](const BriberyQuery& q) { return solve_approval_flip_unary_prices(lifted(q)); }});
  s.push_back({"flip-dp-weights", "dp-weights",
               [](const BriberyQuery& q) { return q.approval_flip && weight_mass(q) <= table_cap; },
               [](const BriberyQuery& q) { return solve_approval_flip_unary_weights(lifted(q)); }});
  s.push_back({"scoring-dp-weights", "dp-weights",
               [](const BriberyQuery& q) {
                 return q.rule.positional() && small_orders(q) && !q.negative && weight_mass(q) <= 64;
               },
               [](const BriberyQuery& q) { return solve_scoring_unary_weights(q); }});
  s.push_back({"scoring-enum", "enum",
               [](const BriberyQuery& q) {
                 return q.rule.positional() && small_orders(q) && !q.weighted && !q.negative &&
                        q.election.voter_count() <= 64;
               },
               [](const BriberyQuery& q) { return solve_scoring_priced(q); }});
  s.push_back({"scoring-ilp", "ilp",
               [](const BriberyQuery& q) {
                 return q.rule.positional() && small_orders(q) && !q.weighted && !q.priced && !q.negative;
               },
               solve_with_ilp});
  s.push_back({"kemeny-ilp", "ilp",
               [](const BriberyQuery& q) { return is(q, RuleKind::kemeny) && small_orders(q) && !q.weighted && !q.priced; },
               solve_with_ilp});
  s.push_back({"dodgson-young-ilp", "ilp",
               [](const BriberyQuery& q) {
                 return (is(q, RuleKind::dodgson) || is(q, RuleKind::young)) && small_orders(q) && !q.weighted &&
                        q.election.voter_count() <= 64;
               },
               solve_with_ilp});
  return s;
}

std::string format_witness(const Election& e, const BriberyWitness& w) {
  if (w.bribes.empty()) return "(no bribes)";
  std::string out;
  for (const auto& b : w.bribes) {
    if (!out.empty()) out += "; ";
    out += "block " + std::to_string(b.block) + " x" + to_string(b.count);
    if (const auto* ballot = std::get_if<Ballot>(&b.replacement)) {
      out += " -> " + format_ballot(e, *ballot);
    } else {
      out += " flip ";
      const auto& flips = std::get<FlipSet>(b.replacement);
      for (std::size_t i = 0; i < flips.size(); ++i) {
        if (i) out += ',';
        out += e.name(flips[i]);
      }
    }
  }
  return out;
}

std::string query_flags(const BriberyQuery& q) {
  std::string out = "--target " + q.election.name(q.target) + " --budget " + to_string(q.budget);
  if (q.priced) out += " --priced";
  if (q.weighted) out += " --weighted";
  if (q.negative) out += " --negative";
  if (q.approval_flip) out += " --flip";
  if (q.unique()) out += " --unique";
  return out;
}

int run_bribe(const BribeOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const ElectionFile file = read_election_file(o.file);
    BriberyQuery q{file.election,
                   file.rule.value_or(file.election.kind() == BallotKind::approvals ? Rule::approval() : Rule::plurality()),
                   0, 0};
    const auto target = file.election.find(o.target);
    if (!target) throw std::invalid_argument("unknown target " + o.target);
    q.target = *target;
    q.budget = parse_int(o.budget);
    q.priced = o.priced;
    q.weighted = o.weighted;
    q.negative = o.negative;
    q.approval_flip = o.flip;
    q.mode = o.unique ? WinnerMode::unique : WinnerMode::nonunique;
    q.validate();

    const auto start = std::chrono::steady_clock::now();
    std::string used;
    Outcome result;
    if (o.solver == "oracle") {
      used = "oracle";
      result = oracle_bribery(q);
    } else {
      const auto registry = default_solvers();
      const NamedSolver* pick = nullptr;
      for (const auto& s : registry) {
        if ((o.solver == "auto" || s.family == o.solver) && s.applies(q)) {
          pick = &s;
          break;
        }
      }
      if (pick) {
        used = pick->id;
        result = pick->solve(q);
      } else if (o.solver == "auto") {
        used = "oracle";
        result = oracle_bribery(q);
      } else {
        throw std::invalid_argument("solver " + o.solver + " does not handle this query");
      }
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    out << "query: " << q.describe() << '\n';
    if (q.rule.positional() && !q.negative) {
      const auto verdict =
          classify_dichotomy(q.rule.protocol_for(q.election.candidate_count()), BriberyVariant{q.priced, q.weighted});
      out << "complexity: " << (verdict.complexity == Complexity::polynomial ? "P" : "NP-complete") << '\n';
    }
    out << "solver: " << used << '\n';
    out << "feasible: " << (result ? "yes" : "no") << '\n';
    if (result) {
      out << "cost: " << to_string(witness_cost(normalized(q), *result)) << '\n';
      out << "witness: " << format_witness(q.election, *result) << '\n';
    }
    out << "time_ms: " << ms << '\n';
    return result ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

std::vector<std::size_t> indices(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& part : split_commas(s)) out.push_back(to_index(parse_int(part)));
  return out;
}

bool has_partition(const PartitionInstance& p) {
  if (!p.legal()) return false;
  const std::size_t n = p.values.size();
  if (n > 24) throw CapExceeded("subset search is limited to 24 values");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Int half = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) half += p.values[i];
    }
    if (2 * half == p.sum()) return true;
  }
  return false;
}

bool has_cover(const X3CInstance& x, std::vector<std::size_t>& chosen, std::size_t from) {
  if (chosen.size() == x.t) return x.is_cover(chosen);
  for (std::size_t i = from; i < x.sets.size(); ++i) {
    chosen.push_back(i);
    if (has_cover(x, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

BriberyQuery reduce_partition(const PartitionInstance& p, const std::string& reduction, bool unique) {
  if (reduction == "plurality-wd") {
    return partition_to_weighted_dollar_plurality(p, unique ? WinnerMode::unique : WinnerMode::nonunique);
  }
  if (reduction == "negative-weighted") return partition_to_negative_weighted(p);
  if (reduction == "approval-flip") return partition_to_approval_flip_weighted(p);
  throw std::invalid_argument("unknown partition reduction " + reduction);
}

BriberyWitness partition_certificate(const PartitionInstance& p, const std::string& reduction,
                                     const std::vector<std::size_t>& subset) {
  if (reduction == "plurality-wd") return partition_witness_plurality(p, subset);
  if (reduction == "negative-weighted") return partition_witness_negative(p, subset);
  return partition_witness_flip(p, subset);
}

}  // namespace

int run_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  try {
    std::optional<BriberyQuery> q;
    std::vector<std::string> notes;
    if (o.kind == "partition" || o.kind == "partition-prime") {
      PartitionInstance p;
      for (const auto& v : o.values) p.values.push_back(parse_int(v));
      if (!p.legal()) {
        err << "warning: illegal partition instance, emitting the fixed no-instance\n";
      }
      if (o.kind == "partition-prime") {
        p = partition_prime_transform(p);
        std::string line = "partition:";
        for (const auto& v : p.values) line += " " + to_string(v);
        notes.push_back(line);
      }
      notes.push_back(std::string("source: ") + (has_partition(p) ? "yes" : "no"));
      if (!o.reduction.empty() && o.reduction != "none") {
        q = reduce_partition(p, o.reduction, o.unique);
        if (!o.certificate.empty()) {
          notes.push_back("witness: " + format_witness(q->election, partition_certificate(p, o.reduction, indices(o.certificate))));
        }
      }
    } else if (o.kind == "x3c") {
      if (!o.reduction.empty() && o.reduction != "approval") throw std::invalid_argument("x3c only reduces to approval");
      X3CInstance x{o.t, {}};
      for (const auto& v : o.values) {
        const auto parts = indices(v);
        if (parts.size() != 3) throw std::invalid_argument("each x3c set needs three elements");
        x.sets.push_back({parts[0], parts[1], parts[2]});
      }
      if (!x.legal()) err << "warning: illegal x3c instance, emitting the fixed no-instance\n";
      std::vector<std::size_t> chosen;
      notes.push_back(std::string("source: ") + (x.legal() && has_cover(x, chosen, 0) ? "yes" : "no"));
      q = x3c_to_approval(x);
      if (!o.certificate.empty()) notes.push_back("witness: " + format_witness(q->election, x3c_witness(x, indices(o.certificate))));
    } else if (o.kind == "embed-manip") {
      const ElectionFile file = read_election_file(o.file);
      ManipulationQuery mq{file.election, file.rule.value_or(Rule::plurality()), {}, 0,
                           o.unique ? WinnerMode::unique : WinnerMode::nonunique};
      const auto target = file.election.find(o.target);
      if (!target) throw std::invalid_argument("unknown target " + o.target);
      mq.target = *target;
      for (const auto& w : split_commas(o.manipulators)) mq.manipulators.push_back(parse_int(w));
      if (o.reduction == "dollar" || o.reduction.empty()) {
        q = manipulation_to_dollar_bribery(mq);
      } else if (o.reduction == "prime") {
        q = manipulation_prime_to_bribery(mq);
      } else {
        throw std::invalid_argument("unknown manipulation reduction " + o.reduction);
      }
      notes.push_back(std::string("source: ") + (oracle_manipulation(mq) ? "yes" : "no"));
    } else {
      throw std::invalid_argument("unknown generator " + o.kind);
    }

    std::string text;
    if (q) {
      text = "# query: " + query_flags(*q) + '\n' + serialize_election({q->election, q->rule});
    }
    std::string sidecar;
    for (const auto& n : notes) sidecar += n + '\n';
    if (o.out.empty()) {
      out << text;
      for (const auto& n : notes) out << "# " << n << '\n';
    } else {
      std::ofstream(o.out) << text;
      std::ofstream(o.out + ".answer") << sidecar;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

BriberyQuery random_query(std::mt19937_64& rng, std::size_t max_candidates, std::size_t max_voters) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto coin = [&]() { return pick(0, 1) == 1; };
  const std::size_t m = pick(1, max_candidates);
  const std::size_t rule_pick = pick(0, 8);
  Rule rule = Rule::plurality();
  switch (rule_pick) {
    case 1: rule = Rule::veto(); break;
    case 2: rule = Rule::scoring(ScoringProtocol::borda(m)); break;
    case 3: rule = Rule::k_approval(pick(1, m)); break;
    case 4: {
      std::vector<Int> alpha;
      for (std::size_t i = 0; i < m; ++i) alpha.push_back(pick(0, 3));
      std::sort(alpha.rbegin(), alpha.rend());
      rule = Rule::scoring(ScoringProtocol(alpha));
      break;
    }
    case 5: rule = Rule::approval(); break;
    case 6: rule = Rule::dodgson(); break;
    case 7: rule = Rule::young(); break;
    case 8: rule = Rule::kemeny(); break;
    default: break;
  }
  const bool approvals = rule.kind == RuleKind::approval;
  const bool unit_only = rule.kind == RuleKind::dodgson || rule.kind == RuleKind::young;
  const auto orders = all_orders(m);
  std::vector<VoterBlock> voters;
  std::size_t left = pick(0, max_voters);
  while (left > 0) {
    VoterBlock v;
    v.multiplicity = pick(1, std::min<std::size_t>(left, 2));
    left -= static_cast<std::size_t>(v.multiplicity);
    if (approvals) {
      std::vector<bool> bits(m);
      for (std::size_t c = 0; c < m; ++c) bits[c] = coin();
      v.ballot = ApprovalVector(bits);
    } else {
      v.ballot = orders[pick(0, orders.size() - 1)];
    }
    v.weight = pick(0, 4);
    v.price = pick(0, 4);
    voters.push_back(std::move(v));
  }
  BriberyQuery q{Election::unnamed(m, {}, approvals ? BallotKind::approvals : BallotKind::orders), rule, pick(0, m - 1),
                 pick(0, 6)};
  q.priced = coin();
  q.weighted = !unit_only && coin();
  q.negative = rule.kind == RuleKind::plurality && pick(0, 3) == 0;
  q.approval_flip = approvals && coin();
  if (q.approval_flip && q.priced && coin()) {
    for (auto& v : voters) {
      for (std::size_t c = 0; c < m; ++c) v.entry_prices.push_back(pick(0, 4));
    }
  }
  q.election = q.election.with_voters(std::move(voters));
  return q;
}

namespace {

BriberyQuery reduction_query(std::mt19937_64& rng) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  PartitionInstance p;
  const std::size_t n = pick(1, 4);
  for (std::size_t i = 0; i < n; ++i) p.values.push_back(pick(0, 4));
  switch (pick(0, 2)) {
    case 0: return partition_to_weighted_dollar_plurality(p);
    case 1: return partition_to_negative_weighted(p);
    default: return partition_to_approval_flip_weighted(p);
  }
}

void dump(const CheckOptions& o, std::size_t index, const BriberyQuery& q, const std::string& why, std::ostream& log) {
  namespace fs = std::filesystem;
  fs::create_directories(o.dump_dir);
  const fs::path path = fs::path(o.dump_dir) /
                        ("mismatch-" + std::to_string(o.seed) + "-" + std::to_string(index) + (q.unique() ? "-u" : "") + ".txt");
  std::ofstream file(path);
  file << "# " << why << '\n' << "# query: " << query_flags(q) << '\n' << serialize_election({q.election, q.rule});
  log << "mismatch: " << why << " (" << path.string() << ")\n";
}

}  // namespace

CheckSummary check_instances(const CheckOptions& o, const std::vector<NamedSolver>& solvers, std::ostream& log) {
  CheckSummary summary;
  std::mt19937_64 rng(o.seed);
  for (std::size_t index = 0; index < o.instances; ++index) {
    ++summary.instances;
    BriberyQuery base = index % 10 == 9 ? reduction_query(rng) : random_query(rng, o.max_candidates, o.max_voters);
    for (WinnerMode mode : {WinnerMode::nonunique, WinnerMode::unique}) {
      BriberyQuery q = base;
      q.mode = mode;
      ++summary.queries;
      Outcome truth;
      try {
        truth = oracle_bribery(q);
      } catch (const CapExceeded&) {
        ++summary.skipped;
        continue;
      }
      for (const auto& s : solvers) {
        if (!s.applies(q)) continue;
        std::string problem;
        try {
          const Outcome got = s.solve(q);
          if (got.has_value() != truth.has_value()) {
            problem = s.id + (got ? " says feasible" : " says infeasible");
          } else if (got && !verify_witness(q, *got)) {
            problem = s.id + " returned a witness that does not work";
          }
        } catch (const CapExceeded&) {
          continue;
        } catch (const std::exception& e) {
          problem = s.id + " threw: " + e.what();
        }
        ++summary.comparisons;
        ++summary.per_solver[s.id];
        if (!problem.empty()) {
          ++summary.mismatches;
          dump(o, index, q, problem, log);
        }
      }
    }
  }
  return summary;
}

int run_check(const CheckOptions& o, std::ostream& out, const std::vector<NamedSolver>& solvers) {
  const CheckSummary s = check_instances(o, solvers, out);
  out << "instances: " << s.instances << '\n';
  out << "queries: " << s.queries << '\n';
  out << "skipped: " << s.skipped << '\n';
  out << "comparisons: " << s.comparisons << '\n';
  for (const auto& [id, count] : s.per_solver) out << "solver " << id << ": " << count << '\n';
  out << "mismatches: " << s.mismatches << '\n';
  return s.mismatches == 0 ? 0 : 1;
}

}  // namespace bribery
