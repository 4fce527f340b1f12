#pragma once

// Plain-text election files:
//
//   candidates: a b c
//   rule: scoring 2 1 0
//   voter: mult=2 weight=3 price=1 order=a>b>c
//   voter: approve=101 prices=1,4,2
//
// `#` starts a comment. mult, weight and price default to 1.

#include <optional>
#include <stdexcept>
#include <string>

#include "bribery/election.hpp"

namespace bribery {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  // 1-based; 0 for problems with the file as a whole.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ElectionFile {
  Election election;
  std::optional<Rule> rule;
};

ElectionFile parse_election(const std::string& text);
std::string serialize_election(const ElectionFile& file);

// Parses the text after `rule:`.
Rule parse_rule(const std::string& text);

std::string format_ballot(const Election& e, const Ballot& ballot);

ElectionFile read_election_file(const std::string& path);

}  // namespace bribery
