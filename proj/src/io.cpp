#include "bribery/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bribery {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at - start));
    if (at == std::string::npos) return out;
    start = at + 1;
  }
}

Int nonnegative(const std::string& text, const std::string& what) {
  Int v;
  try {
    v = parse_int(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(what + " is not an integer: " + text);
  }
  if (v < 0) throw std::invalid_argument(what + " must be nonnegative");
  return v;
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char ch : name) {
    if (ch == '>' || ch == ',' || ch == '=' || ch == '#' || ch == ':') return false;
  }
  return true;
}

struct VoterLine {
  VoterBlock block;
  BallotKind kind;
};

VoterLine parse_voter(const std::string& body, const std::vector<std::string>& names,
                      const std::map<std::string, CandidateId>& index) {
  const std::size_t m = names.size();
  VoterBlock block;
  std::optional<BallotKind> kind;
  std::set<std::string> seen;
  for (const auto& token : words(body)) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (!seen.insert(key).second) throw std::invalid_argument("repeated " + key);
    if (key == "mult") {
      block.multiplicity = nonnegative(value, "mult");
      if (block.multiplicity < 1) throw std::invalid_argument("mult must be at least 1");
    } else if (key == "weight") {
      block.weight = nonnegative(value, "weight");
    } else if (key == "price") {
      block.price = nonnegative(value, "price");
    } else if (key == "prices") {
      for (const auto& part : split(value, ',')) block.entry_prices.push_back(nonnegative(part, "entry price"));
      if (block.entry_prices.size() != m) throw std::invalid_argument("prices needs one entry per candidate");
    } else if (key == "order") {
      if (kind) throw std::invalid_argument("a voter has either order= or approve=");
      std::vector<CandidateId> ranking;
      std::vector<bool> used(m, false);
      for (const auto& name : split(value, '>')) {
        const auto it = index.find(name);
        if (it == index.end()) throw std::invalid_argument("unknown candidate " + name);
        if (used[it->second]) throw std::invalid_argument("candidate " + name + " ranked twice");
        used[it->second] = true;
        ranking.push_back(it->second);
      }
      if (ranking.size() != m) throw std::invalid_argument("order must rank every candidate");
      block.ballot = PreferenceOrder(std::move(ranking));
      kind = BallotKind::orders;
    } else if (key == "approve") {
      if (kind) throw std::invalid_argument("a voter has either order= or approve=");
      if (value.size() != m) throw std::invalid_argument("approval bitstring needs one bit per candidate");
      std::vector<bool> bits;
      for (char ch : value) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("approval bits are 0 or 1");
        bits.push_back(ch == '1');
      }
      block.ballot = ApprovalVector(std::move(bits));
      kind = BallotKind::approvals;
    } else {
      throw std::invalid_argument("unknown voter field " + key);
    }
  }
  if (!kind) throw std::invalid_argument("voter needs order= or approve=");
  return {std::move(block), *kind};
}

}  // namespace

Rule parse_rule(const std::string& text) {
  const auto w = words(text);
  if (w.empty()) throw std::invalid_argument("empty rule");
  const std::string& head = w[0];
  auto no_args = [&](Rule r) {
    if (w.size() != 1) throw std::invalid_argument(head + " takes no arguments");
    return r;
  };
  if (head == "plurality") return no_args(Rule::plurality());
  if (head == "approval") return no_args(Rule::approval());
  if (head == "veto") return no_args(Rule::veto());
  if (head == "dodgson") return no_args(Rule::dodgson());
  if (head == "young") return no_args(Rule::young());
  if (head == "kemeny") return no_args(Rule::kemeny());
  if (head == "kapproval") {
    if (w.size() != 2) throw std::invalid_argument("kapproval takes one argument");
    return Rule::k_approval(to_index(nonnegative(w[1], "k")));
  }
  if (head == "scoring") {
    std::vector<Int> alpha;
    for (std::size_t i = 1; i < w.size(); ++i) alpha.push_back(nonnegative(w[i], "score"));
    return Rule::scoring(ScoringProtocol(std::move(alpha)));
  }
  throw std::invalid_argument("unknown rule " + head);
}

ElectionFile parse_election(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> names;
  std::map<std::string, CandidateId> index;
  bool have_candidates = false;
  std::optional<Rule> rule;
  std::optional<BallotKind> kind;
  std::vector<VoterBlock> voters;
  std::size_t number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(number, "expected `key: value`");
    const std::string key = trim(line.substr(0, colon));
    const std::string body = line.substr(colon + 1);
    try {
      if (key == "candidates") {
        if (have_candidates) throw std::invalid_argument("candidates listed twice");
        names = words(body);
        if (names.empty()) throw std::invalid_argument("no candidates");
        for (CandidateId c = 0; c < names.size(); ++c) {
          if (!valid_name(names[c])) throw std::invalid_argument("bad candidate name " + names[c]);
          if (!index.emplace(names[c], c).second) throw std::invalid_argument("duplicate candidate " + names[c]);
        }
        have_candidates = true;
      } else if (key == "rule") {
        if (rule) throw std::invalid_argument("rule given twice");
        rule = parse_rule(body);
      } else if (key == "voter") {
        if (!have_candidates) throw std::invalid_argument("voter before candidates");
        auto v = parse_voter(body, names, index);
        if (kind && *kind != v.kind) throw std::invalid_argument("mixed ranked and approval ballots");
        kind = v.kind;
        voters.push_back(std::move(v.block));
      } else {
        throw std::invalid_argument("unknown key " + key);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, e.what());
    } catch (const std::length_error& e) {
      throw ParseError(number, e.what());
    }
  }
  if (!have_candidates) throw ParseError(0, "missing candidates line");
  if (!kind) kind = rule ? rule->ballot_kind() : BallotKind::orders;
  try {
    return {Election(std::move(names), std::move(voters), *kind), rule};
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string format_ballot(const Election& e, const Ballot& ballot) {
  std::string out;
  if (const auto* order = std::get_if<PreferenceOrder>(&ballot)) {
    for (std::size_t i = 0; i < order->size(); ++i) {
      if (i) out += '>';
      out += e.name(order->at(i));
    }
  } else {
    for (bool bit : std::get<ApprovalVector>(ballot).bits()) out += bit ? '1' : '0';
  }
  return out;
}

std::string serialize_election(const ElectionFile& file) {
  const Election& e = file.election;
  std::string out = "candidates:";
  for (const auto& name : e.candidates()) out += " " + name;
  out += '\n';
  if (file.rule) out += "rule: " + file.rule->name() + '\n';
  for (const auto& v : e.voters()) {
    out += "voter:";
    if (v.multiplicity != 1) out += " mult=" + to_string(v.multiplicity);
    if (v.weight != 1) out += " weight=" + to_string(v.weight);
    if (v.price != 1) out += " price=" + to_string(v.price);
    if (!v.entry_prices.empty()) {
      out += " prices=";
      for (std::size_t i = 0; i < v.entry_prices.size(); ++i) {
        if (i) out += ',';
        out += to_string(v.entry_prices[i]);
      }
    }
    out += std::holds_alternative<PreferenceOrder>(v.ballot) ? " order=" : " approve=";
    out += format_ballot(e, v.ballot);
    out += '\n';
  }
  return out;
}

ElectionFile read_election_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_election(text.str());
}

}  // namespace bribery
