#include "edpm/reader.hpp"

#include <cctype>
#include <string>

namespace edpm {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }
bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_';
}

std::string_view skip_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

// Consumes `word` if it is the next whole token.
bool consume_word(std::string_view& s, std::string_view word) {
  if (s.substr(0, word.size()) != word) return false;
  if (s.size() > word.size() && is_ident_char(s[word.size()])) return false;
  s.remove_prefix(word.size());
  return true;
}

enum class TokKind { Ident, LParen, RParen, Comma, Other, End };

struct Token {
  TokKind kind;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : rest_(text) {}

  Token next() {
    rest_ = skip_space(rest_);
    if (rest_.empty() || rest_.substr(0, 2) == "//") return {TokKind::End, {}};
    char c = rest_.front();
    if (is_letter(c)) {
      std::size_t n = 1;
      while (n < rest_.size() && is_ident_char(rest_[n])) ++n;
      return take(TokKind::Ident, n);
    }
    switch (c) {
      case '(': return take(TokKind::LParen, 1);
      case ')': return take(TokKind::RParen, 1);
      case ',': return take(TokKind::Comma, 1);
      default: {
        std::size_t n = 1;
        while (n < rest_.size() && !is_space(rest_[n])) ++n;
        return take(TokKind::Other, n);
      }
    }
  }

  Token peek() {
    Lexer copy = *this;
    return copy.next();
  }

 private:
  Token take(TokKind kind, std::size_t n) {
    Token t{kind, rest_.substr(0, n)};
    rest_.remove_prefix(n);
    return t;
  }

  std::string_view rest_;
};

Diagnostic error(DiagCode code, int line, std::string message) {
  return Diagnostic{code, line, std::move(message)};
}

std::string describe(const Token& t) {
  if (t.kind == TokKind::End) return "end of line";
  return "'" + std::string(t.text) + "'";
}

}  // namespace

std::string_view to_string(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::Init: return "init";
    case DirectiveKind::Deinit: return "deinit";
    case DirectiveKind::Start: return "start";
    case DirectiveKind::Stop: return "stop";
  }
  return "?";
}

bool is_identifier(std::string_view token) {
  if (token.empty() || !is_letter(token.front())) return false;
  for (char c : token) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

bool is_edpm_pragma(std::string_view line) {
  auto s = skip_space(line);
  if (s.empty() || s.front() != '#') return false;
  s = skip_space(s.substr(1));
  if (!consume_word(s, "pragma")) return false;
  if (s.empty() || !is_space(s.front())) return false;
  s = skip_space(s);
  return consume_word(s, "edpm");
}

Expected<Directive> parse_directive(std::string_view line_text, int line_number) {
  auto s = skip_space(line_text);
  s = skip_space(s.substr(1));  // '#'
  consume_word(s, "pragma");
  s = skip_space(s);
  consume_word(s, "edpm");

  Lexer lex(s);
  Directive d;
  d.position.line = line_number;

  Token action = lex.next();
  if (action.kind != TokKind::Ident) {
    return error(DiagCode::UnknownAction, line_number,
                 "expected init, deinit, start or stop, found " + describe(action));
  }
  if (action.text == "init") {
    d.kind = DirectiveKind::Init;
  } else if (action.text == "deinit") {
    d.kind = DirectiveKind::Deinit;
  } else if (action.text == "start") {
    d.kind = DirectiveKind::Start;
  } else if (action.text == "stop") {
    d.kind = DirectiveKind::Stop;
  } else {
    return error(DiagCode::UnknownAction, line_number,
                 "unknown action '" + std::string(action.text) + "'");
  }

  if (d.kind == DirectiveKind::Start || d.kind == DirectiveKind::Stop) {
    Token name = lex.next();
    if (name.kind != TokKind::Ident) {
      return error(DiagCode::MissingRegionName, line_number,
                   std::string(to_string(d.kind)) + " requires a region name, found " +
                       describe(name));
    }
    d.region_name = std::string(name.text);
  }

  if (d.kind == DirectiveKind::Start && lex.peek().kind != TokKind::End) {
    while (true) {
      Token type = lex.next();
      if (type.kind != TokKind::Ident) {
        return error(DiagCode::MalformedClause, line_number,
                     "expected a counter type, found " + describe(type));
      }
      Clause clause{std::string(type.text), {}};
      if (lex.peek().kind == TokKind::LParen) {
        lex.next();
        if (lex.peek().kind == TokKind::RParen) {
          lex.next();
        } else {
          while (true) {
            Token counter = lex.next();
            if (counter.kind != TokKind::Ident) {
              return error(DiagCode::MalformedClause, line_number,
                           "expected a counter name in '" + clause.counter_type +
                               "(...)', found " + describe(counter));
            }
            clause.counters.emplace_back(counter.text);
            Token sep = lex.next();
            if (sep.kind == TokKind::RParen) break;
            if (sep.kind != TokKind::Comma) {
              return error(DiagCode::MalformedClause, line_number,
                           "expected ',' or ')' in '" + clause.counter_type +
                               "(...)', found " + describe(sep));
            }
          }
        }
      }
      d.clauses.push_back(std::move(clause));

      Token sep = lex.peek();
      if (sep.kind == TokKind::End) break;
      if (sep.kind == TokKind::RParen) {
        return error(DiagCode::MalformedClause, line_number, "unbalanced ')'");
      }
      if (sep.kind != TokKind::Comma) {
        return error(DiagCode::TrailingGarbage, line_number,
                     "unexpected " + describe(sep) + " after clause");
      }
      lex.next();
    }
  }

  Token extra = lex.next();
  if (extra.kind != TokKind::End) {
    return error(DiagCode::TrailingGarbage, line_number,
                 "unexpected " + describe(extra) + " after '" +
                     std::string(to_string(d.kind)) + "' directive");
  }
  return d;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(begin));
      break;
    }
    lines.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return lines;
}

ScanResult scan(std::string_view source_text) {
  ScanResult result;
  int line_number = 0;
  for (auto line : split_lines(source_text)) {
    ++line_number;
    if (!is_edpm_pragma(line)) continue;
    auto parsed = parse_directive(line, line_number);
    if (parsed) {
      result.directives.push_back(std::move(parsed).value());
    } else {
      result.errors.push_back(parsed.error());
    }
  }
  return result;
}

std::string render_directive(const Directive& directive) {
  std::string out = "#pragma edpm ";
  out += to_string(directive.kind);
  if (!directive.region_name.empty()) {
    out += ' ';
    out += directive.region_name;
  }
  for (std::size_t i = 0; i < directive.clauses.size(); ++i) {
    const auto& clause = directive.clauses[i];
    out += i == 0 ? " " : ", ";
    out += clause.counter_type;
    if (clause.counters.empty()) continue;
    out += '(';
    for (std::size_t k = 0; k < clause.counters.size(); ++k) {
      if (k > 0) out += ", ";
      out += clause.counters[k];
    }
    out += ')';
  }
  return out;
}

}  // namespace edpm
