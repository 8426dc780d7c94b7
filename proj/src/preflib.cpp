#include "ballot/preflib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace ballot {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> nonblank_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    std::size_t c = s.find(',');
    out.push_back(trim(s.substr(0, c)));
    if (c == std::string_view::npos) break;
    s = s.substr(c + 1);
  }
  return out;
}

// "1,{2,3},4" -> groups {1},{2,3},{4}; validates completeness against m.
TiedProfile::Groups parse_order(std::string_view items, std::size_t m, std::size_t line) {
  TiedProfile::Groups groups;
  std::vector<bool> seen(m + 1, false);
  std::size_t i = 0;
  auto take_index = [&](std::string_view tok) {
    std::int64_t v = parse_int(tok, line, "candidate index");
    if (v < 1 || static_cast<std::size_t>(v) > m) {
      throw ParseError(line, "candidate index " + std::to_string(v) + " out of range 1.." + std::to_string(m));
    }
    if (seen[static_cast<std::size_t>(v)]) throw ParseError(line, "candidate " + std::to_string(v) + " listed twice");
    seen[static_cast<std::size_t>(v)] = true;
    return CandidateId{static_cast<int>(v)};
  };
  while (i < items.size()) {
    while (i < items.size() && (std::isspace(static_cast<unsigned char>(items[i])) || items[i] == ',')) ++i;
    if (i >= items.size()) break;
    if (items[i] == '{') {
      std::size_t close = items.find('}', i);
      if (close == std::string_view::npos) throw ParseError(line, "unterminated tie group");
      std::vector<CandidateId> group;
      std::string_view inner = trim(items.substr(i + 1, close - i - 1));
      if (inner.empty()) throw ParseError(line, "empty tie group");
      for (std::string_view tok : split_commas(inner)) group.push_back(take_index(tok));
      groups.push_back(std::move(group));
      i = close + 1;
    } else {
      std::size_t end = items.find(',', i);
      if (end == std::string_view::npos) end = items.size();
      groups.push_back({take_index(items.substr(i, end - i))});
      i = end;
    }
  }
  std::size_t covered = static_cast<std::size_t>(std::count(seen.begin() + 1, seen.end(), true));
  if (covered != m) {
    throw ParseError(line, "incomplete order: covers " + std::to_string(covered) + " of " + std::to_string(m) +
                               " alternatives");
  }
  return groups;
}

std::int64_t checked_multiplicity(std::string_view s, std::size_t line) {
  std::int64_t mult = parse_int(s, line, "multiplicity");
  if (mult < 1) throw ParseError(line, "multiplicity must be positive");
  return mult;
}

PrefLibDocument parse_legacy(const std::vector<Line>& lines) {
  PrefLibDocument doc;
  std::size_t at = 0;
  auto need = [&](const char* what) -> const Line& {
    if (at >= lines.size()) {
      throw ParseError(lines.empty() ? 1 : lines.back().number, std::string("unexpected end of file, expected ") + what);
    }
    return lines[at++];
  };
  const Line& head = need("alternative count");
  std::int64_t m = parse_int(head.text, head.number, "alternative count");
  if (m < 1) throw ParseError(head.number, "alternative count must be positive");
  for (std::int64_t k = 1; k <= m; ++k) {
    const Line& l = need("alternative line");
    std::size_t comma = l.text.find(',');
    if (comma == std::string_view::npos) throw ParseError(l.number, "malformed alternative line");
    std::int64_t idx = parse_int(l.text.substr(0, comma), l.number, "alternative index");
    if (idx != k) throw ParseError(l.number, "alternatives must be listed as 1..m in order");
    doc.alternatives[static_cast<int>(idx)] = std::string(trim(l.text.substr(comma + 1)));
  }
  const Line& counts = need("voter count header");
  auto fields = split_commas(counts.text);
  if (fields.size() != 3) throw ParseError(counts.number, "malformed voter header, expected 'n,sum,unique'");
  std::int64_t declared_sum = parse_int(fields[1], counts.number, "vote sum");
  std::int64_t declared_unique = parse_int(fields[2], counts.number, "unique order count");
  parse_int(fields[0], counts.number, "voter count");

  for (; at < lines.size(); ++at) {
    const Line& l = lines[at];
    std::size_t comma = l.text.find(',');
    if (comma == std::string_view::npos) throw ParseError(l.number, "malformed order line");
    OrderLine ol;
    ol.multiplicity = checked_multiplicity(l.text.substr(0, comma), l.number);
    ol.groups = parse_order(l.text.substr(comma + 1), static_cast<std::size_t>(m), l.number);
    doc.order_lines.push_back(std::move(ol));
  }
  if (doc.order_lines.empty()) throw ParseError(counts.number, "no order lines");
  if (static_cast<std::int64_t>(doc.order_lines.size()) != declared_unique || doc.voter_count() != declared_sum) {
    throw ParseError(counts.number, "voter header does not match the order lines");
  }
  return doc;
}

PrefLibDocument parse_modern(const std::vector<Line>& lines) {
  PrefLibDocument doc;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> declared_voters;
  std::size_t last_line = 1;
  for (const Line& l : lines) {
    last_line = l.number;
    if (l.text.front() == '#') {
      std::string_view body = trim(l.text.substr(1));
      std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) throw ParseError(l.number, "malformed metadata line");
      std::string key(trim(body.substr(0, colon)));
      std::string value(trim(body.substr(colon + 1)));
      if (key == "NUMBER ALTERNATIVES") {
        m = parse_int(value, l.number, "alternative count");
      } else if (key == "NUMBER VOTERS") {
        declared_voters = parse_int(value, l.number, "voter count");
      } else if (key.rfind("ALTERNATIVE NAME ", 0) == 0) {
        std::int64_t idx = parse_int(std::string_view(key).substr(17), l.number, "alternative index");
        doc.alternatives[static_cast<int>(idx)] = value;
        continue;
      }
      doc.metadata.emplace_back(std::move(key), std::move(value));
      continue;
    }
    if (!m || *m < 1) throw ParseError(l.number, "order line before a valid NUMBER ALTERNATIVES header");
    std::size_t colon = l.text.find(':');
    if (colon == std::string_view::npos) throw ParseError(l.number, "malformed order line, expected 'count: order'");
    OrderLine ol;
    ol.multiplicity = checked_multiplicity(l.text.substr(0, colon), l.number);
    ol.groups = parse_order(l.text.substr(colon + 1), static_cast<std::size_t>(*m), l.number);
    doc.order_lines.push_back(std::move(ol));
  }
  if (!m || *m < 1) throw ParseError(last_line, "missing NUMBER ALTERNATIVES header");
  for (const auto& [idx, name] : doc.alternatives) {
    if (idx < 1 || idx > *m) throw ParseError(last_line, "alternative name index out of range");
  }
  for (int k = 1; k <= *m; ++k) doc.alternatives.try_emplace(k, "c" + std::to_string(k));
  if (doc.order_lines.empty()) throw ParseError(last_line, "no order lines");
  if (declared_voters && *declared_voters != doc.voter_count()) {
    throw ParseError(last_line, "NUMBER VOTERS does not match the order lines");
  }
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::int64_t PrefLibDocument::voter_count() const {
  return std::accumulate(order_lines.begin(), order_lines.end(), std::int64_t{0},
                         [](std::int64_t acc, const OrderLine& l) { return acc + l.multiplicity; });
}

bool PrefLibDocument::is_strict() const {
  return std::all_of(order_lines.begin(), order_lines.end(), [](const OrderLine& l) {
    return std::all_of(l.groups.begin(), l.groups.end(), [](const auto& g) { return g.size() == 1; });
  });
}

PrefLibDocument parse_preflib(std::string_view text) {
  std::vector<Line> lines = nonblank_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  return lines.front().text.front() == '#' ? parse_modern(lines) : parse_legacy(lines);
}

std::string serialize_preflib(const PrefLibDocument& doc) {
  std::ostringstream out;
  out << doc.alternatives.size() << '\n';
  for (const auto& [idx, name] : doc.alternatives) out << idx << ',' << name << '\n';
  out << doc.voter_count() << ',' << doc.voter_count() << ',' << doc.order_lines.size() << '\n';
  for (const OrderLine& l : doc.order_lines) {
    out << l.multiplicity;
    for (const auto& group : l.groups) {
      out << ',';
      if (group.size() == 1) {
        out << group.front().value;
        continue;
      }
      out << '{';
      for (std::size_t k = 0; k < group.size(); ++k) out << (k ? "," : "") << group[k].value;
      out << '}';
    }
    out << '\n';
  }
  return out.str();
}

Election expand_voters(const PrefLibDocument& doc) {
  const std::size_t m = doc.alternative_count();
  std::vector<std::string> names;
  for (const auto& [idx, name] : doc.alternatives) names.push_back(name);
  std::vector<TiedProfile::Groups> orders;
  for (const OrderLine& l : doc.order_lines) {
    for (std::int64_t k = 0; k < l.multiplicity; ++k) orders.push_back(l.groups);
  }
  TiedProfile tied(m, std::move(orders));
  if (tied.is_strict()) return Election(std::move(names), tied.to_strict());
  return Election(std::move(names), std::move(tied));
}

ScoreMatrix tied_to_scores(const TiedProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  std::vector<std::int64_t> scores(m * n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& groups = profile.orders()[v];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (CandidateId c : groups[g]) {
        scores[c.pos() * n + v] = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(g + 1);
      }
    }
  }
  return ScoreMatrix(m, n, std::move(scores));
}

ScoreMatrix parse_score_csv(std::string_view text) {
  std::vector<Line> lines = nonblank_lines(text);
  if (lines.empty()) throw ParseError(1, "empty score matrix");
  std::int64_t n = parse_int(lines.front().text, lines.front().number, "voter count");
  if (n < 1) throw ParseError(lines.front().number, "voter count must be positive");
  if (lines.size() < 2) throw ParseError(lines.front().number, "score matrix has no candidate rows");
  std::vector<std::int64_t> scores;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto fields = split_commas(lines[r].text);
    if (static_cast<std::int64_t>(fields.size()) != n) {
      throw ParseError(lines[r].number, "expected " + std::to_string(n) + " scores");
    }
    for (std::string_view f : fields) {
      std::int64_t s = parse_int(f, lines[r].number, "score");
      if (s < 0) throw ParseError(lines[r].number, "scores must be non-negative");
      scores.push_back(s);
    }
  }
  return ScoreMatrix(lines.size() - 1, static_cast<std::size_t>(n), std::move(scores));
}

Election load_election(const std::filesystem::path& path) {
  std::string text = read_file(path);
  if (path.extension() == ".csv") {
    ScoreMatrix s = parse_score_csv(text);
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= s.candidate_count(); ++i) names.push_back("c" + std::to_string(i));
    return Election(std::move(names), std::move(s));
  }
  return expand_voters(parse_preflib(text));
}

}  // namespace ballot
