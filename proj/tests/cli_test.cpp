#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bribery/cli.hpp"
#include "bribery/io.hpp"
#include "bribery/oracle.hpp"
#include "support.hpp"

using namespace test;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bribery-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run bribe(BribeOptions options) {
  std::ostringstream out, err;
  const int code = run_bribe(options, out, err);
  return {code, out.str(), err.str()};
}

Run gen(GenOptions options) {
  std::ostringstream out, err;
  const int code = run_gen(options, out, err);
  return {code, out.str(), err.str()};
}

// Solves a generated document by replaying its `# query:` line.
int replay(const std::string& document, const std::string& solver = "oracle") {
  const auto start = document.find("# query:");
  REQUIRE(start != std::string::npos);
  std::istringstream flags(document.substr(start + 8, document.find('\n', start) - start - 8));
  BribeOptions options;
  options.file = write("replay.txt", document);
  options.solver = solver;
  for (std::string flag; flags >> flag;) {
    if (flag == "--target") flags >> options.target;
    else if (flag == "--budget") flags >> options.budget;
    else if (flag == "--priced") options.priced = true;
    else if (flag == "--weighted") options.weighted = true;
    else if (flag == "--negative") options.negative = true;
    else if (flag == "--flip") options.flip = true;
    else if (flag == "--unique") options.unique = true;
    else FAIL("unexpected flag " << flag);
  }
  return bribe(options).code;
}

}  // namespace

TEST_CASE("parse examples") {
  const auto two = parse_election("candidates: a b\nvoter: order=a>b\n");
  CHECK(two.election.candidate_count() == 2);
  CHECK(two.election.voters().size() == 1);
  CHECK_FALSE(two.rule);

  const auto app = parse_election("candidates: a b\nvoter: approve=10\n");
  CHECK(app.election.kind() == BallotKind::approvals);
  CHECK(app.election.voters()[0].approvals().approves(0));
  CHECK_FALSE(app.election.voters()[0].approvals().approves(1));

  const auto full = parse_election(
      "# comment\ncandidates: x y z\nrule: scoring 2 1 0\n\nvoter: mult=2 weight=3 price=4 order=z>x>y  # trailing\n");
  REQUIRE(full.rule);
  CHECK(full.rule->name() == "scoring 2 1 0");
  const auto& v = full.election.voters()[0];
  CHECK(v.multiplicity == 2);
  CHECK(v.weight == 3);
  CHECK(v.price == 4);
  CHECK(v.order().top() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_election(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("candidates: a b\nvoter: order=a>a\n") == 2);
  CHECK(line_of("candidates: a b\n\nvoter: order=a>c\n") == 3);
  CHECK(line_of("candidates: a b\nvoter: approve=101\n") == 2);
  CHECK(line_of("candidates: a b\nvoter: weight=-1 order=a>b\n") == 2);
  CHECK(line_of("voter: order=a>b\ncandidates: a b\n") == 1);
  CHECK(line_of("candidates: a b\nvoter: order=a>b\nvoter: approve=10\n") == 3);
  CHECK(line_of("candidates: a a\n") == 1);
  CHECK(line_of("candidates: a b\nrule: borda\n") == 2);
  CHECK(line_of("candidates: a b\nvoter: order=a>b mult=0\n") == 2);
  CHECK(line_of("candidates: a b\nvoter: mult=1 mult=2 order=a>b\n") == 2);
  CHECK(line_of("rule: plurality\n") == 0);
}

TEST_CASE("rules parse back from their names") {
  for (const Rule& r : {Rule::plurality(), Rule::approval(), Rule::veto(), Rule::k_approval(2), Rule::dodgson(),
                        Rule::young(), Rule::kemeny(), Rule::scoring(ScoringProtocol({3, 1, 1, 0}))}) {
    CHECK(parse_rule(r.name()).name() == r.name());
  }
}

TEST_CASE("serialize round trip") {
  auto g = rng(71);
  for (int round = 0; round < 200; ++round) {
    const BriberyQuery q = random_query(g, 4, 5);
    ElectionFile file{q.election, q.rule};
    const std::string text = serialize_election(file);
    const ElectionFile back = parse_election(text);
    CHECK(serialize_election(back) == text);
    CHECK(back.election.voters().size() == q.election.voters().size());
    for (std::size_t i = 0; i < back.election.voters().size(); ++i) {
      const auto& a = back.election.voters()[i];
      const auto& b = q.election.voters()[i];
      CHECK(a.ballot == b.ballot);
      CHECK(a.weight == b.weight);
      CHECK(a.price == b.price);
      CHECK(a.multiplicity == b.multiplicity);
      CHECK(a.entry_prices == b.entry_prices);
    }
  }
}

TEST_CASE("bribe exit codes") {
  const auto easy = write("easy.txt", "candidates: p a b\nvoter: order=a>p>b\nvoter: order=a>b>p\nvoter: order=p>a>b\n");
  BribeOptions options;
  options.file = easy;
  options.target = "p";
  options.budget = "1";
  const auto yes = bribe(options);
  CHECK(yes.code == 0);
  CHECK(yes.out.find("feasible: yes") != std::string::npos);
  CHECK(yes.out.find("witness: block") != std::string::npos);
  CHECK(yes.out.find("solver: plurality-greedy") != std::string::npos);

  options.budget = "0";
  const auto no = bribe(options);
  CHECK(no.code == 1);
  CHECK(no.out.find("feasible: no") != std::string::npos);
  CHECK(no.out.find("witness:") == std::string::npos);

  options.budget = "1";
  options.target = "zed";
  CHECK(bribe(options).code == 2);
  options.target = "p";
  options.file = scratch("missing.txt").string();
  CHECK(bribe(options).code == 2);
  options.file = easy;
  options.budget = "-1";
  CHECK(bribe(options).code == 2);
  options.budget = "1";
  options.file = write("four.txt", "candidates: p a b c\nvoter: order=a>p>b>c\n");
  options.solver = "ilp";
  CHECK(bribe(options).code == 2);  // models stop at three candidates
  options.file = easy;
  options.solver = "oracle";
  CHECK(bribe(options).code == 0);
}

TEST_CASE("bribe agrees across solvers") {
  const auto path = write("weighted.txt",
                          "candidates: p a b\nrule: plurality\nvoter: weight=4 price=2 order=a>p>b\n"
                          "voter: weight=5 price=3 order=b>a>p\nvoter: weight=2 order=p>a>b\n");
  for (const std::string solver : {"auto", "dp-prices", "dp-weights", "oracle"}) {
    for (const std::string budget : {"1", "2", "3", "5"}) {
      BribeOptions options;
      options.file = path;
      options.target = "p";
      options.budget = budget;
      options.priced = true;
      options.weighted = true;
      options.solver = solver;
      const int code = bribe(options).code;
      options.solver = "oracle";
      CHECK_MESSAGE(code == bribe(options).code, solver << " at " << budget);
    }
  }
  BribeOptions sweep;
  sweep.file = path;
  sweep.target = "p";
  sweep.budget = "3";
  sweep.priced = true;
  sweep.weighted = true;
  sweep.solver = "sweep";
  CHECK(bribe(sweep).code == 2);  // weighted and priced together is not a sweep case
}

TEST_CASE("gen instances") {
  GenOptions part;
  part.kind = "partition";
  part.values = {"1", "1"};
  part.reduction = "plurality-wd";
  part.certificate = "0";
  const auto yes = gen(part);
  CHECK(yes.code == 0);
  CHECK(yes.out.find("# source: yes") != std::string::npos);
  CHECK(yes.out.find("# witness:") != std::string::npos);
  CHECK(replay(yes.out) == 0);

  part.values = {"1", "2"};
  part.certificate.clear();
  const auto odd = gen(part);
  CHECK(odd.err.find("warning") != std::string::npos);
  CHECK(replay(odd.out) == 1);

  GenOptions x3c;
  x3c.kind = "x3c";
  x3c.values = {"0,1,2"};
  x3c.t = 1;
  const auto cover = gen(x3c);
  CHECK(cover.code == 0);
  CHECK(replay(cover.out) == 0);

  for (const std::string reduction : {"plurality-wd", "negative-weighted", "approval-flip"}) {
    for (const auto& values : std::vector<std::vector<std::string>>{{"2", "2"}, {"1", "1", "4"}, {"3", "1", "2"}}) {
      GenOptions g;
      g.kind = "partition";
      g.values = values;
      g.reduction = reduction;
      const auto r = gen(g);
      const bool source = r.out.find("# source: yes") != std::string::npos;
      CHECK_MESSAGE(replay(r.out) == (source ? 0 : 1), reduction);
    }
  }

  GenOptions file_out = part;
  file_out.values = {"1", "1"};
  file_out.out = scratch("gen.txt").string();
  CHECK(gen(file_out).code == 0);
  std::ifstream answer(file_out.out + ".answer");
  std::string first;
  std::getline(answer, first);
  CHECK(first == "source: yes");

  GenOptions bad;
  bad.kind = "sudoku";
  CHECK(gen(bad).code == 2);
}

TEST_CASE("check harness") {
  CheckOptions none;
  none.instances = 0;
  none.dump_dir = scratch("dump-none").string();
  std::ostringstream quiet;
  CHECK(run_check(none, quiet) == 0);

  CheckOptions some;
  some.seed = 1;
  some.instances = 100;
  some.dump_dir = scratch("dump-good").string();
  std::ostringstream log;
  CHECK(run_check(some, log) == 0);
  CHECK(log.str().find("mismatches: 0") != std::string::npos);

  // A solver that claims every plurality instance is infeasible.
  std::vector<NamedSolver> broken{NamedSolver{
      "always-no", "greedy", [](const BriberyQuery& q) { return q.rule.name() == "plurality"; },
      [](const BriberyQuery&) -> Outcome { return std::nullopt; }}};
  some.dump_dir = scratch("dump-bad").string();
  fs::remove_all(some.dump_dir);
  std::ostringstream bad;
  CHECK(run_check(some, bad, broken) != 0);
  CHECK_FALSE(fs::is_empty(some.dump_dir));
}
