#include "sketchrec/shape_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <type_traits>

#include "sketchrec/tables.hpp"

namespace sketchrec {

DslError::DslError(Kind kind, const std::string& message, std::size_t line, std::size_t column)
    : ParseError(message, line, column), kind_(kind) {}

std::string_view property_name(ReportProperty p) {
  switch (p) {
  case ReportProperty::kAngles: return "angles";
  case ReportProperty::kLengths: return "lengths";
  case ReportProperty::kClosureGap: return "closure_gap";
  }
  return "?";
}

bool ShapeSpec::is_closed() const {
  return std::any_of(constraints.begin(), constraints.end(),
                     [](const Constraint& c) { return std::holds_alternative<Closed>(c); });
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { kIdent, kInt, kNumber, kString, kLBrace, kRBrace, kSemi, kComma, kDotDot, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string_view describe(Tok t) {
  switch (t) {
  case Tok::kIdent: return "identifier";
  case Tok::kInt: return "integer";
  case Tok::kNumber: return "number";
  case Tok::kString: return "string";
  case Tok::kLBrace: return "'{'";
  case Tok::kRBrace: return "'}'";
  case Tok::kSemi: return "';'";
  case Tok::kComma: return "','";
  case Tok::kDotDot: return "'..'";
  case Tok::kEnd: return "end of input";
  }
  return "?";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::kEnd;
      return t;
    }
    const char c = text_[pos_];
    if (is_ident_start(c)) {
      t.kind = Tok::kIdent;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        t.text += advance();
      return t;
    }
    if (is_digit(c) || (c == '-' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
      lex_number(t);
      return t;
    }
    if (c == '"') {
      lex_string(t);
      return t;
    }
    advance();
    switch (c) {
    case '{': t.kind = Tok::kLBrace; return t;
    case '}': t.kind = Tok::kRBrace; return t;
    case ';': t.kind = Tok::kSemi; return t;
    case ',': t.kind = Tok::kComma; return t;
    case '.':
      if (pos_ < text_.size() && text_[pos_] == '.') {
        advance();
        t.kind = Tok::kDotDot;
        return t;
      }
      break;
    default: break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                                     : "\\x" + to_hex(static_cast<unsigned char>(c));
    throw DslError(DslError::Kind::kSyntax, "unexpected character '" + shown + "'", t.line, t.column);
  }

private:
  static std::string to_hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 0xf]};
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_number(Token& t) {
    t.kind = Tok::kInt;
    if (text_[pos_] == '-')
      t.text += advance();
    while (pos_ < text_.size() && is_digit(text_[pos_]))
      t.text += advance();
    // "1..4" is INT DOTDOT INT, so a fraction needs a digit after the dot.
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
      t.kind = Tok::kNumber;
      t.text += advance();
      while (pos_ < text_.size() && is_digit(text_[pos_]))
        t.text += advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-'))
        ++look;
      if (look < text_.size() && is_digit(text_[look])) {
        t.kind = Tok::kNumber;
        while (pos_ < look)
          t.text += advance();
        while (pos_ < text_.size() && is_digit(text_[pos_]))
          t.text += advance();
      }
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_]))
      throw DslError(DslError::Kind::kSyntax, "malformed number '" + t.text + text_[pos_] + "'", t.line, t.column);
  }

  void lex_string(Token& t) {
    t.kind = Tok::kString;
    advance();  // opening quote
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n')
        throw DslError(DslError::Kind::kSyntax, "unterminated string", t.line, t.column);
      const char c = advance();
      if (c == '"')
        return;
      if (c == '\\') {
        if (pos_ >= text_.size())
          throw DslError(DslError::Kind::kSyntax, "unterminated string", t.line, t.column);
        const char e = advance();
        switch (e) {
        case '"': t.text += '"'; break;
        case '\\': t.text += '\\'; break;
        case 'n': t.text += '\n'; break;
        case 't': t.text += '\t'; break;
        default:
          throw DslError(DslError::Kind::kSyntax, std::string("unknown escape '\\") + e + "'", line_, column_ - 2);
        }
      } else {
        t.text += c;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
  explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

  DomainLibrary library() {
    DomainLibrary lib;
    std::set<std::string> names;
    do {
      const Token at = tok_;
      DomainSpec d = domain();
      if (!names.insert(d.name).second)
        validation("duplicate domain name '" + d.name + "'", at);
      lib.domains.push_back(std::move(d));
    } while (tok_.kind != Tok::kEnd);
    return lib;
  }

private:
  [[noreturn]] void syntax(const std::string& msg, const Token& at) const {
    throw DslError(DslError::Kind::kSyntax, msg, at.line, at.column);
  }
  [[noreturn]] void validation(const std::string& msg, const Token& at) const {
    throw DslError(DslError::Kind::kValidation, msg, at.line, at.column);
  }
  [[noreturn]] void unexpected(std::string_view wanted) const {
    std::string got(describe(tok_.kind));
    if (tok_.kind == Tok::kIdent || tok_.kind == Tok::kInt || tok_.kind == Tok::kNumber)
      got += " '" + tok_.text + "'";
    syntax("expected " + std::string(wanted) + ", got " + got, tok_);
  }

  Token take() {
    Token t = std::move(tok_);
    tok_ = lexer_.next();
    return t;
  }

  Token expect(Tok kind) {
    if (tok_.kind != kind)
      unexpected(describe(kind));
    return take();
  }

  void keyword(std::string_view word) {
    if (tok_.kind != Tok::kIdent || tok_.text != word)
      unexpected("'" + std::string(word) + "'");
    take();
  }

  int integer() {
    if (tok_.kind != Tok::kInt)
      unexpected("integer");
    const Token t = take();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
      syntax("integer out of range '" + t.text + "'", t);
    return value;
  }

  double number() {
    if (tok_.kind != Tok::kInt && tok_.kind != Tok::kNumber)
      unexpected("number");
    const Token t = take();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
      syntax("number out of range '" + t.text + "'", t);
    return value;
  }

  DomainSpec domain() {
    keyword("domain");
    DomainSpec d;
    d.name = expect(Tok::kIdent).text;
    expect(Tok::kLBrace);
    std::set<std::string> names;
    do {
      const Token at = tok_;
      ShapeSpec s = shape();
      if (!names.insert(s.name).second)
        validation("duplicate shape name '" + s.name + "' in domain '" + d.name + "'", at);
      d.shapes.push_back(std::move(s));
    } while (tok_.kind != Tok::kRBrace);
    expect(Tok::kRBrace);
    return d;
  }

  ShapeSpec shape() {
    keyword("shape");
    ShapeSpec s;
    s.name = expect(Tok::kIdent).text;
    expect(Tok::kLBrace);

    keyword("lines");
    const Token lines_at = tok_;
    s.lines.min = integer();
    s.lines.max = s.lines.min;
    if (tok_.kind == Tok::kDotDot) {
      take();
      s.lines.max = integer();
    }
    if (s.lines.min < 1 || s.lines.max < s.lines.min)
      validation("line range " + std::to_string(s.lines.min) + ".." + std::to_string(s.lines.max) +
                     " must satisfy 1 <= min <= max",
                 lines_at);
    expect(Tok::kSemi);

    keyword("constraints");
    expect(Tok::kLBrace);
    while (tok_.kind != Tok::kRBrace)
      s.constraints.push_back(constraint(s.lines.max));
    expect(Tok::kRBrace);

    s.display_label = s.name;
    if (tok_.kind == Tok::kIdent && tok_.text == "display") {
      take();
      s.display_label = expect(Tok::kString).text;
      expect(Tok::kSemi);
    }
    if (tok_.kind == Tok::kIdent && tok_.text == "report") {
      take();
      s.report.push_back(property());
      while (tok_.kind == Tok::kComma) {
        take();
        s.report.push_back(property());
      }
      expect(Tok::kSemi);
    }
    expect(Tok::kRBrace);
    return s;
  }

  ReportProperty property() {
    if (tok_.kind != Tok::kIdent)
      unexpected("property name");
    const Token t = take();
    for (auto p : {ReportProperty::kAngles, ReportProperty::kLengths, ReportProperty::kClosureGap})
      if (property_name(p) == t.text)
        return p;
    throw DslError(DslError::Kind::kVocabulary,
                   "unknown property '" + t.text + "' (expected angles, lengths or closure_gap)", t.line, t.column);
  }

  std::pair<int, int> line_pair(int max_lines) {
    const Token first_at = tok_;
    const int a = integer();
    const Token second_at = tok_;
    const int b = integer();
    if (a < 1 || a > max_lines)
      validation("line index " + std::to_string(a) + " out of range 1.." + std::to_string(max_lines), first_at);
    if (b < 1 || b > max_lines)
      validation("line index " + std::to_string(b) + " out of range 1.." + std::to_string(max_lines), second_at);
    if (a == b)
      validation("constraint relates line " + std::to_string(a) + " to itself", first_at);
    return {a, b};
  }

  double non_negative(double v, const Token& at, std::string_view what) {
    if (v < 0.0)
      validation(std::string(what) + " must be non-negative", at);
    return v;
  }

  // Optional "tol NUMBER".
  std::optional<double> tolerance() {
    if (tok_.kind == Tok::kIdent && tok_.text == "tol") {
      take();
      const Token at = tok_;
      return non_negative(number(), at, "tolerance");
    }
    return std::nullopt;
  }

  Constraint constraint(int max_lines) {
    if (tok_.kind != Tok::kIdent)
      unexpected("constraint name");
    const Token name = take();
    Constraint c;
    if (name.text == "closed") {
      Closed closed;
      if (auto t = tolerance()) {
        closed = *t >= 1.0 ? Closed{*t, 0.0} : Closed{0.0, *t};
      }
      c = closed;
    } else if (name.text == "perpendicular" || name.text == "parallel" || name.text == "equal_length") {
      const auto [a, b] = line_pair(max_lines);
      const auto tol = tolerance();
      if (name.text == "perpendicular")
        c = Perpendicular{a, b, tol.value_or(tolerance::kAngleDeg)};
      else if (name.text == "parallel")
        c = Parallel{a, b, tol.value_or(tolerance::kAngleDeg)};
      else
        c = EqualLength{a, b, tol.value_or(tolerance::kLengthRatio)};
    } else if (name.text == "angle") {
      const auto [a, b] = line_pair(max_lines);
      const Token at = tok_;
      const double deg = number();
      if (deg < 0.0 || deg > 180.0)
        validation("angle must be within 0..180 degrees", at);
      c = AngleBetween{a, b, deg, tolerance().value_or(tolerance::kAngleDeg)};
    } else if (name.text == "length_ratio") {
      const auto [a, b] = line_pair(max_lines);
      const Token at = tok_;
      const double ratio = number();
      if (!(ratio > 0.0))
        validation("length ratio must be positive", at);
      c = LengthRatio{a, b, ratio, tolerance().value_or(tolerance::kLengthRatio)};
    } else {
      throw DslError(DslError::Kind::kVocabulary, "unknown constraint '" + name.text + "'", name.line, name.column);
    }
    expect(Tok::kSemi);
    return c;
  }

  Lexer lexer_;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Printer

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string string_literal(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default: out += c;
    }
  }
  return out + "\"";
}

bool closed_is_default(const Closed& c) {
  return c.gap_px == tolerance::kClosedGapPx && c.gap_fraction == tolerance::kClosedGapFraction;
}

bool closed_is_representable(const Closed& c) {
  return closed_is_default(c) || (c.gap_fraction == 0.0 && (c.gap_px >= 1.0 || c.gap_px == 0.0)) ||
         (c.gap_px == 0.0 && c.gap_fraction < 1.0);
}

std::string render_constraint(const Constraint& constraint) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        const auto pair = [](const auto& x) { return std::to_string(x.first) + " " + std::to_string(x.second); };
        if constexpr (std::is_same_v<T, Closed>) {
          if (closed_is_default(c))
            return "closed;";
          return "closed tol " + num(c.gap_fraction == 0.0 ? c.gap_px : c.gap_fraction) + ";";
        } else if constexpr (std::is_same_v<T, Perpendicular>) {
          return "perpendicular " + pair(c) + " tol " + num(c.tol_deg) + ";";
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return "parallel " + pair(c) + " tol " + num(c.tol_deg) + ";";
        } else if constexpr (std::is_same_v<T, EqualLength>) {
          return "equal_length " + pair(c) + " tol " + num(c.tol_ratio) + ";";
        } else if constexpr (std::is_same_v<T, AngleBetween>) {
          return "angle " + pair(c) + " " + num(c.degrees) + " tol " + num(c.tol_deg) + ";";
        } else {
          return "length_ratio " + pair(c) + " " + num(c.ratio) + " tol " + num(c.tol_ratio) + ";";
        }
      },
      constraint);
}

bool is_identifier(std::string_view s) {
  return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin(), s.end(), is_ident_char);
}

} // namespace

DomainLibrary parse_library(std::string_view text) { return Parser(text).library(); }

DomainSpec parse_domain_file(std::string_view text) {
  DomainLibrary lib = parse_library(text);
  if (lib.domains.size() != 1)
    throw DslError(DslError::Kind::kSyntax,
                   "expected exactly one domain, found " + std::to_string(lib.domains.size()), 1, 1);
  return std::move(lib.domains.front());
}

std::string render_domain(const DomainSpec& domain) {
  std::ostringstream out;
  out << "domain " << domain.name << " {\n";
  for (const auto& s : domain.shapes) {
    out << "  shape " << s.name << " {\n";
    out << "    lines " << s.lines.min;
    if (s.lines.max != s.lines.min)
      out << ".." << s.lines.max;
    out << ";\n";
    if (s.constraints.empty()) {
      out << "    constraints { }\n";
    } else {
      out << "    constraints {\n";
      for (const auto& c : s.constraints)
        out << "      " << render_constraint(c) << "\n";
      out << "    }\n";
    }
    out << "    display " << string_literal(s.display_label) << ";\n";
    if (!s.report.empty()) {
      out << "    report ";
      for (std::size_t i = 0; i < s.report.size(); ++i)
        out << (i ? ", " : "") << property_name(s.report[i]);
      out << ";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_library(const DomainLibrary& library) {
  std::string out;
  for (std::size_t i = 0; i < library.domains.size(); ++i) {
    if (i)
      out += "\n";
    out += render_domain(library.domains[i]);
  }
  return out;
}

std::vector<Diagnostic> validate(const DomainLibrary& library) {
  std::vector<Diagnostic> out;
  if (library.domains.empty())
    out.push_back({"", "library has no domains"});

  std::set<std::string> domain_names;
  for (const auto& d : library.domains) {
    if (!is_identifier(d.name))
      out.push_back({d.name, "domain name is not an identifier"});
    if (!domain_names.insert(d.name).second)
      out.push_back({d.name, "duplicate domain name"});
    if (d.shapes.empty())
      out.push_back({d.name, "domain has no shapes"});

    std::set<std::string> shape_names;
    for (const auto& s : d.shapes) {
      const std::string path = d.name + "/" + s.name;
      auto report = [&](std::string msg) { out.push_back({path, std::move(msg)}); };

      if (!is_identifier(s.name))
        report("shape name is not an identifier");
      if (!shape_names.insert(s.name).second)
        report("duplicate shape name");
      if (s.lines.min < 1 || s.lines.max < s.lines.min)
        report("line range " + std::to_string(s.lines.min) + ".." + std::to_string(s.lines.max) +
               " must satisfy 1 <= min <= max");

      for (const auto& constraint : s.constraints) {
        std::visit(
            [&](const auto& c) {
              using T = std::decay_t<decltype(c)>;
              if constexpr (std::is_same_v<T, Closed>) {
                if (c.gap_px < 0.0 || c.gap_fraction < 0.0)
                  report("closed tolerance must be non-negative");
                else if (!closed_is_representable(c))
                  report("closed tolerance mixes pixel and fraction components");
              } else {
                for (int idx : {c.first, c.second})
                  if (idx < 1 || idx > s.lines.max)
                    report("line index " + std::to_string(idx) + " out of range 1.." + std::to_string(s.lines.max));
                if (c.first == c.second)
                  report("constraint relates line " + std::to_string(c.first) + " to itself");
                if constexpr (std::is_same_v<T, EqualLength> || std::is_same_v<T, LengthRatio>) {
                  if (c.tol_ratio < 0.0)
                    report("tolerance must be non-negative");
                } else {
                  if (c.tol_deg < 0.0)
                    report("tolerance must be non-negative");
                }
                if constexpr (std::is_same_v<T, LengthRatio>) {
                  if (!(c.ratio > 0.0))
                    report("length ratio must be positive");
                }
                if constexpr (std::is_same_v<T, AngleBetween>) {
                  if (c.degrees < 0.0 || c.degrees > 180.0)
                    report("angle must be within 0..180 degrees");
                }
              }
            },
            constraint);
      }
    }
  }
  return out;
}

DomainLibrary load_library_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error("domain directory '" + dir.string() + "' does not exist");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".dsl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw Error("no .dsl files in '" + dir.string() + "'");

  DomainLibrary lib;
  for (const auto& f : files) {
    DomainLibrary part;
    try {
      part = parse_library(read_text_file(f));
    } catch (const DslError& e) {
      throw DslError(e.kind(), f.filename().string() + ": " + e.detail(), e.line(), e.column());
    }
    for (auto& d : part.domains)
      lib.domains.push_back(std::move(d));
  }
  if (const auto diags = validate(lib); !diags.empty()) {
    std::string msg = "invalid domain library:";
    for (const auto& d : diags)
      msg += "\n  " + d.path + ": " + d.message;
    throw ValidationError(msg);
  }
  return lib;
}

} // namespace sketchrec
