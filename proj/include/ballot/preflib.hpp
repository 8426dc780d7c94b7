#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ballot/election.hpp"

namespace ballot {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct OrderLine {
  std::int64_t multiplicity = 1;
  TiedProfile::Groups groups;

  friend bool operator==(const OrderLine&, const OrderLine&) = default;
};

/// A complete-list PrefLib file (strict or tied orders).
struct PrefLibDocument {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::map<int, std::string> alternatives;
  std::vector<OrderLine> order_lines;

  std::size_t alternative_count() const { return alternatives.size(); }
  std::int64_t voter_count() const;
  bool is_strict() const;
};

/// Parses either the legacy numeric-header layout or the '#'-metadata layout.
PrefLibDocument parse_preflib(std::string_view text);

/// Writes the legacy layout: m, "index,name" lines, "n,sum,unique", order lines.
std::string serialize_preflib(const PrefLibDocument& doc);

/// One voter per unit of multiplicity, in file order.
Election expand_voters(const PrefLibDocument& doc);

/// Group g (1-based, in preference order) scores m - g for all its members.
ScoreMatrix tied_to_scores(const TiedProfile& profile);

/// First line: voter count; then one comma-separated row per candidate.
ScoreMatrix parse_score_csv(std::string_view text);

/// Loads a PrefLib file, or a score-matrix CSV when the extension is ".csv".
Election load_election(const std::filesystem::path& path);

}  // namespace ballot
