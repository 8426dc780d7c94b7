#include "ballot/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ballot {

namespace {

constexpr std::size_t kWrapColumn = 200;

bool is_name_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  static const std::string_view extra = "_.!\"#$%&()/,;?@`'{}|~";
  return extra.find(c) != std::string_view::npos;
}

std::vector<std::string> sanitized_names(const LinearProgram& model) {
  std::vector<std::string> out;
  std::unordered_map<std::string, std::string> owner;
  for (const Variable& v : model.variables()) {
    std::string s = sanitize_name(v.name);
    auto [it, fresh] = owner.emplace(s, v.name);
    if (!fresh) {
      throw FormatError("variables '" + it->second + "' and '" + v.name + "' both sanitize to '" + s + "'");
    }
    out.push_back(std::move(s));
  }
  return out;
}

void append_term(std::string& line, std::string& out, bool first, const Rational& coef, const std::string& name) {
  std::string piece;
  Rational mag = coef < Rational{0} ? -coef : coef;
  if (first) {
    if (coef < Rational{0}) piece += "- ";
  } else {
    piece += coef < Rational{0} ? " - " : " + ";
  }
  if (mag != Rational{1}) piece += format_rational(mag) + " ";
  piece += name;
  if (line.size() + piece.size() > kWrapColumn) {
    out += line + "\n";
    line = "  ";
  }
  line += piece;
}

std::string_view sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

// ---- parsing --------------------------------------------------------------

enum class TokKind { Name, Number, Plus, Minus, Colon, Relation, Tag };

struct Token {
  TokKind kind;
  std::string text;
  Rational number{0};
  Sense sense = Sense::LessEqual;
  std::size_t line = 0;
};

Rational pow10(int e) {
  Rational r{1};
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Exact value of a decimal literal such as 12, 0.25 or 1.5e3.
Rational parse_decimal(std::string_view s, std::size_t line) {
  std::size_t i = 0;
  std::int64_t mantissa = 0;
  int frac_digits = 0;
  bool any = false;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (after_point) break;
      after_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) break;
    if (mantissa > (INT64_MAX - 9) / 10) throw FormatError("line " + std::to_string(line) + ": number too long");
    mantissa = mantissa * 10 + (c - '0');
    if (after_point) ++frac_digits;
    any = true;
  }
  if (!any) throw FormatError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  int exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw FormatError("line " + std::to_string(line) + ": bad exponent");
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) break;
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 18) throw FormatError("line " + std::to_string(line) + ": exponent out of range");
    }
    if (neg) exponent = -exponent;
  }
  if (i != s.size()) throw FormatError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  int shift = exponent - frac_digits;
  Rational value{mantissa};
  return shift >= 0 ? value * pow10(shift) : value / pow10(-shift);
}

void tokenize_line(std::string_view line, std::size_t lineno, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t{TokKind::Name, {}, Rational{0}, Sense::LessEqual, lineno};
    if (c == '+' || c == '-') {
      t.kind = c == '+' ? TokKind::Plus : TokKind::Minus;
      ++i;
    } else if (c == ':') {
      t.kind = TokKind::Colon;
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      t.kind = TokKind::Relation;
      std::size_t j = i + 1;
      if (j < line.size() && (line[j] == '=' || line[j] == '<' || line[j] == '>')) ++j;
      std::string op(line.substr(i, j - i));
      if (op == "<" || op == "<=" || op == "=<") {
        t.sense = Sense::LessEqual;
      } else if (op == ">" || op == ">=" || op == "=>") {
        t.sense = Sense::GreaterEqual;
      } else if (op == "=") {
        t.sense = Sense::Equal;
      } else {
        throw FormatError("line " + std::to_string(lineno) + ": bad relation '" + op + "'");
      }
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) ++j;
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          j = k;
          while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        }
      }
      t.kind = TokKind::Number;
      t.text = std::string(line.substr(i, j - i));
      t.number = parse_decimal(t.text, lineno);
      i = j;
    } else if (is_name_char(c)) {
      std::size_t j = i;
      while (j < line.size() && is_name_char(line[j])) ++j;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
}

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

std::optional<Section> section_keyword(std::string_view line, ObjectiveSense& sense) {
  std::string lower;
  for (char c : line) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::set<std::string> maxes = {"maximize", "maximise", "maximum", "max"};
  static const std::set<std::string> mins = {"minimize", "minimise", "minimum", "min"};
  if (maxes.count(lower)) {
    sense = ObjectiveSense::Maximize;
    return Section::Objective;
  }
  if (mins.count(lower)) {
    sense = ObjectiveSense::Minimize;
    return Section::Objective;
  }
  if (lower == "subject to" || lower == "such that" || lower == "st" || lower == "s.t.") return Section::Constraints;
  if (lower == "bounds" || lower == "bound") return Section::Bounds;
  if (lower == "binaries" || lower == "binary" || lower == "bin") return Section::Binaries;
  if (lower == "generals" || lower == "general" || lower == "gen" || lower == "integers") return Section::Generals;
  if (lower == "end") return Section::End;
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct ParsedTerm {
  std::string name;
  Rational coef;
};

class LpReader {
 public:
  explicit LpReader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek(std::size_t ahead = 0) const { return toks_.at(pos_ + ahead); }
  bool has(std::size_t ahead) const { return pos_ + ahead < toks_.size(); }
  const Token& next() { return toks_.at(pos_++); }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = done() ? (toks_.empty() ? 0 : toks_.back().line) : peek().line;
    throw FormatError("line " + std::to_string(line) + ": " + what);
  }

  void skip_label() {
    if (has(1) && peek().kind == TokKind::Name && peek(1).kind == TokKind::Colon) pos_ += 2;
  }

  // Terms up to (not including) a relation token or the end of input.
  std::vector<ParsedTerm> terms() {
    std::vector<ParsedTerm> out;
    while (!done() && peek().kind != TokKind::Relation && peek().kind != TokKind::Tag) {
      Rational sign{1};
      bool signed_term = false;
      while (!done() && (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus)) {
        if (next().kind == TokKind::Minus) sign = -sign;
        signed_term = true;
      }
      if (!out.empty() && !signed_term) fail("expected '+' or '-' between terms");
      Rational coef{1};
      if (!done() && peek().kind == TokKind::Number) coef = next().number;
      if (done() || peek().kind != TokKind::Name) fail("expected a variable name");
      out.push_back({next().text, sign * coef});
    }
    return out;
  }

  Rational signed_number() {
    Rational sign{1};
    while (!done() && (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus)) {
      if (next().kind == TokKind::Minus) sign = -sign;
    }
    if (done()) fail("expected a number");
    if (peek().kind == TokKind::Name) {
      std::string lower = peek().text;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      if (lower == "inf" || lower == "infinity") fail("infinite bounds are not supported");
    }
    if (peek().kind != TokKind::Number) fail("expected a number");
    return sign * next().number;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct PendingRow {
  std::vector<ParsedTerm> terms;
  Sense sense;
  Rational rhs;
  std::string tag;
};

}  // namespace

std::string sanitize_name(std::string_view name) {
  std::string s;
  for (char c : name) s += is_name_char(c) ? c : '_';
  if (s.empty()) return "_";
  const bool leading_digit = std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.';
  const bool exponent_like = (s[0] == 'e' || s[0] == 'E') && s.size() > 1 &&
                             std::isdigit(static_cast<unsigned char>(s[1]));
  if (leading_digit || exponent_like) s.insert(s.begin(), '_');
  return s;
}

std::string export_lp(const LinearProgram& model) {
  const std::vector<std::string> names = sanitized_names(model);
  if (names.empty()) throw FormatError("cannot write a model without variables");

  std::string out = "\\ ballot model\n";
  out += model.objective().sense == ObjectiveSense::Maximize ? "Maximize\n" : "Minimize\n";

  std::vector<Rational> obj(names.size(), Rational{0});
  for (const Term& t : model.objective().terms) obj[t.var] = t.coef;
  std::string line = " obj: ";
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (obj[j] == Rational{0}) {
      std::string piece = (j == 0 ? "0 " : " + 0 ") + names[j];
      if (line.size() + piece.size() > kWrapColumn) {
        out += line + "\n";
        line = "  ";
      }
      line += piece;
    } else {
      append_term(line, out, j == 0, obj[j], names[j]);
    }
  }
  out += line + "\n";

  out += "Subject To\n";
  for (std::size_t i = 0; i < model.constraint_count(); ++i) {
    const LinearConstraint& c = model.constraints()[i];
    if (!c.tag.empty()) out += "\\@tag " + c.tag + "\n";
    line = " r" + std::to_string(i + 1) + ": ";
    if (c.terms.empty()) {
      line += "0 " + names[0];
    } else {
      for (std::size_t k = 0; k < c.terms.size(); ++k) {
        append_term(line, out, k == 0, c.terms[k].coef, names[c.terms[k].var]);
      }
    }
    line += " " + std::string(sense_text(c.sense)) + " " + format_rational(c.rhs);
    out += line + "\n";
  }

  out += "Bounds\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    const Variable& v = model.variables()[j];
    if (v.kind == VarKind::Binary) continue;
    if (v.lower == v.upper) {
      out += " " + names[j] + " = " + format_rational(v.lower) + "\n";
    } else {
      out += " " + format_rational(v.lower) + " <= " + names[j] + " <= " + format_rational(v.upper) + "\n";
    }
  }

  auto list_section = [&](const char* header, VarKind kind) {
    std::string body;
    std::string row = " ";
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (model.variables()[j].kind != kind) continue;
      if (row.size() + names[j].size() + 1 > kWrapColumn) {
        body += row + "\n";
        row = " ";
      }
      row += (row.size() > 1 ? " " : "") + names[j];
    }
    if (row.size() > 1) body += row + "\n";
    if (!body.empty()) out += std::string(header) + "\n" + body;
  };
  list_section("Binaries", VarKind::Binary);
  list_section("Generals", VarKind::Integer);
  out += "End\n";
  return out;
}

LinearProgram parse_lp(std::string_view text) {
  ObjectiveSense obj_sense = ObjectiveSense::Maximize;
  Section section = Section::None;
  std::vector<Token> objective_toks;
  std::vector<Token> row_toks;
  std::vector<std::vector<Token>> bound_lines;
  std::vector<Token> binary_toks;
  std::vector<Token> general_toks;
  bool saw_objective = false;
  bool saw_end = false;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::string_view line = raw;
    if (std::size_t bs = line.find('\\'); bs != std::string_view::npos) {
      std::string_view comment = line.substr(bs);
      if (comment.substr(0, 5) == "\\@tag" && section == Section::Constraints) {
        Token t{TokKind::Tag, std::string(trim(comment.substr(5))), Rational{0}, Sense::LessEqual, lineno};
        row_toks.push_back(std::move(t));
      }
      line = line.substr(0, bs);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (saw_end) throw FormatError("line " + std::to_string(lineno) + ": content after End");

    ObjectiveSense s = obj_sense;
    if (auto kw = section_keyword(line, s)) {
      if (*kw == Section::Objective) {
        if (saw_objective) throw FormatError("line " + std::to_string(lineno) + ": second objective section");
        saw_objective = true;
        obj_sense = s;
      }
      section = *kw;
      if (section == Section::End) saw_end = true;
      continue;
    }
    switch (section) {
      case Section::None: throw FormatError("line " + std::to_string(lineno) + ": content before any section");
      case Section::Objective: tokenize_line(line, lineno, objective_toks); break;
      case Section::Constraints: tokenize_line(line, lineno, row_toks); break;
      case Section::Bounds: {
        std::vector<Token> toks;
        tokenize_line(line, lineno, toks);
        bound_lines.push_back(std::move(toks));
        break;
      }
      case Section::Binaries: tokenize_line(line, lineno, binary_toks); break;
      case Section::Generals: tokenize_line(line, lineno, general_toks); break;
      case Section::End: break;
    }
    if (nl == text.size()) break;
  }
  if (!saw_objective) throw FormatError("missing objective section");
  if (!saw_end) throw FormatError("missing End");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> index;
  auto declare = [&](const std::string& name) {
    if (index.emplace(name, order.size()).second) order.push_back(name);
  };

  LpReader obj_reader(std::move(objective_toks));
  obj_reader.skip_label();
  std::vector<ParsedTerm> obj_terms = obj_reader.terms();
  if (!obj_reader.done()) obj_reader.fail("unexpected token in objective");
  for (const auto& t : obj_terms) declare(t.name);

  std::vector<PendingRow> rows;
  LpReader rr(std::move(row_toks));
  std::string pending_tag;
  while (!rr.done()) {
    if (rr.peek().kind == TokKind::Tag) {
      pending_tag = rr.next().text;
      continue;
    }
    rr.skip_label();
    PendingRow row;
    row.terms = rr.terms();
    if (rr.done() || rr.peek().kind != TokKind::Relation) rr.fail("expected a relation");
    row.sense = rr.next().sense;
    row.rhs = rr.signed_number();
    row.tag = std::move(pending_tag);
    pending_tag.clear();
    for (const auto& t : row.terms) declare(t.name);
    rows.push_back(std::move(row));
  }

  std::map<std::string, std::pair<std::optional<Rational>, std::optional<Rational>>> bounds;
  for (auto& toks : bound_lines) {
    LpReader br(std::move(toks));
    std::optional<Rational> lead;
    if (br.peek().kind != TokKind::Name) {
      lead = br.signed_number();
      if (br.done() || br.peek().kind != TokKind::Relation) br.fail("expected a relation in bound");
      Sense rel = br.next().sense;
      if (rel != Sense::LessEqual) br.fail("leading bound must use <=");
    }
    if (br.done() || br.peek().kind != TokKind::Name) br.fail("expected a variable in bound");
    std::string name = br.next().text;
    declare(name);
    auto& [lo, hi] = bounds[name];
    if (lead) lo = lead;
    if (!br.done()) {
      if (br.peek().kind == TokKind::Name) br.fail("free or infinite bounds are not supported");
      if (br.peek().kind != TokKind::Relation) br.fail("expected a relation in bound");
      Sense rel = br.next().sense;
      Rational value = br.signed_number();
      if (rel == Sense::LessEqual) {
        hi = value;
      } else if (rel == Sense::GreaterEqual) {
        if (lead) br.fail("mixed bound directions");
        lo = value;
      } else {
        if (lead) br.fail("mixed bound directions");
        lo = value;
        hi = value;
      }
    }
    if (!br.done()) br.fail("trailing tokens in bound");
  }

  std::set<std::string> binaries, generals;
  for (const Token& t : binary_toks) {
    if (t.kind != TokKind::Name) throw FormatError("line " + std::to_string(t.line) + ": expected a name");
    declare(t.text);
    binaries.insert(t.text);
  }
  for (const Token& t : general_toks) {
    if (t.kind != TokKind::Name) throw FormatError("line " + std::to_string(t.line) + ": expected a name");
    declare(t.text);
    generals.insert(t.text);
  }

  LinearProgram model;
  for (const std::string& name : order) {
    auto b = bounds.find(name);
    if (binaries.count(name)) {
      if (b != bounds.end()) throw FormatError("binary variable '" + name + "' must not carry bounds");
      model.add_binary(name);
      continue;
    }
    if (b == bounds.end() || !b->second.second) throw FormatError("variable '" + name + "' has no finite upper bound");
    Rational lo = b->second.first.value_or(Rational{0});
    VarKind kind = generals.count(name) ? VarKind::Integer : VarKind::Continuous;
    model.add_variable(name, kind, lo, *b->second.second);
  }

  auto convert = [&](const std::vector<ParsedTerm>& terms) {
    std::vector<Term> out;
    for (const auto& t : terms) out.push_back({index.at(t.name), t.coef});
    return out;
  };
  model.set_objective(obj_sense, convert(obj_terms));
  for (auto& r : rows) model.add_constraint({convert(r.terms), r.sense, r.rhs, std::move(r.tag)});
  return model;
}

std::string export_mps(const LinearProgram& model) {
  const std::vector<std::string> names = sanitized_names(model);

  // Fields start at columns 2, 5, 15, 25, 40 and 50.
  auto field_line = [](std::string_view f1, std::string_view f2, std::string_view f3, std::string_view f4) {
    std::string s = " ";
    s += f1;
    auto pad_to = [&s](std::size_t col) {
      if (s.size() < col - 1) {
        s.resize(col - 1, ' ');
      } else {
        s += ' ';
      }
    };
    if (!f2.empty()) {
      pad_to(5);
      s += f2;
    }
    if (!f3.empty()) {
      pad_to(15);
      s += f3;
    }
    if (!f4.empty()) {
      pad_to(25);
      s += f4;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };

  std::string out = "NAME          ballot\n";
  out += "OBJSENSE\n";
  out += model.objective().sense == ObjectiveSense::Maximize ? "    MAX\n" : "    MIN\n";
  out += "ROWS\n";
  out += field_line("N", "obj", "", "");
  for (std::size_t i = 0; i < model.constraint_count(); ++i) {
    const char* kind = "L";
    if (model.constraints()[i].sense == Sense::GreaterEqual) kind = "G";
    if (model.constraints()[i].sense == Sense::Equal) kind = "E";
    out += field_line(kind, "r" + std::to_string(i + 1), "", "");
  }

  std::vector<std::vector<std::pair<std::string, Rational>>> columns(names.size());
  for (const Term& t : model.objective().terms) columns[t.var].push_back({"obj", t.coef});
  for (std::size_t i = 0; i < model.constraint_count(); ++i) {
    for (const Term& t : model.constraints()[i].terms) {
      columns[t.var].push_back({"r" + std::to_string(i + 1), t.coef});
    }
  }

  out += "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < names.size(); ++j) {
    const bool integral = model.variables()[j].integral();
    if (integral != in_int) {
      std::string label = "MARKER" + std::to_string(marker++);
      out += field_line("", label, "'MARKER'", integral ? "'INTORG'" : "'INTEND'");
      in_int = integral;
    }
    if (columns[j].empty()) columns[j].push_back({"obj", Rational{0}});
    for (const auto& [row, coef] : columns[j]) out += field_line("", names[j], row, format_rational(coef));
  }
  if (in_int) out += field_line("", "MARKER" + std::to_string(marker), "'MARKER'", "'INTEND'");

  out += "RHS\n";
  for (std::size_t i = 0; i < model.constraint_count(); ++i) {
    const Rational& rhs = model.constraints()[i].rhs;
    if (rhs != Rational{0}) out += field_line("", "RHS", "r" + std::to_string(i + 1), format_rational(rhs));
  }

  out += "BOUNDS\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    const Variable& v = model.variables()[j];
    switch (v.kind) {
      case VarKind::Binary: out += field_line("BV", "BND", names[j], ""); break;
      case VarKind::Integer:
        out += field_line("LI", "BND", names[j], format_rational(v.lower));
        out += field_line("UI", "BND", names[j], format_rational(v.upper));
        break;
      case VarKind::Continuous:
        if (v.lower == v.upper) {
          out += field_line("FX", "BND", names[j], format_rational(v.lower));
        } else {
          out += field_line("LO", "BND", names[j], format_rational(v.lower));
          out += field_line("UP", "BND", names[j], format_rational(v.upper));
        }
        break;
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace ballot
