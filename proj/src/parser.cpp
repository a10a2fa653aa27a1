#include "rlz/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace rlz {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!consume(c)) throw ParseError(pos, std::string("expected '") + c + "' (" + what + ")");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident(const char* what) {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos]))
      throw ParseError(pos, std::string("expected identifier (") + what + ")");
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  // Identifier that may start with a digit (stack bottoms like w_0, w_a1).
  std::string loose_ident(const char* what) {
    skip_ws();
    if (pos >= text.size() || !ident_char(text[pos]))
      throw ParseError(pos, std::string("expected name (") + what + ")");
    std::size_t start = pos;
    while (pos < text.size() && (ident_char(text[pos]) || text[pos] == '+')) ++pos;
    return text.substr(start, pos - start);
  }

  std::uint64_t nat(const char* what) {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError(pos, std::string("expected number (") + what + ")");
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
    return v;
  }
};

StackPtr parse_stack_at(Lexer& lx);
TermPtr parse_term_at(Lexer& lx);

TermPtr parse_atom(Lexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    lx.consume('(');
    TermPtr t = parse_term_at(lx);
    lx.expect(')', "closing application group");
    return t;
  }
  if (c == '\\') {
    lx.consume('\\');
    std::string var = lx.ident("abstraction binder");
    lx.expect('.', "abstraction dot");
    TermPtr body = parse_term_at(lx);
    return mk_abs(var, body);
  }
  if (c == '#') {
    lx.consume('#');
    return mk_instr(lx.ident("instruction name"));
  }
  if (c == 'k' && lx.pos + 1 < lx.text.size() && lx.text[lx.pos + 1] == '[') {
    lx.consume('k');
    lx.consume('[');
    StackPtr s = parse_stack_at(lx);
    lx.expect(']', "closing continuation bracket");
    return mk_kont(s);
  }
  if (Lexer::ident_start(c)) {
    std::string id = lx.ident("term");
    if (id == "cc") return mk_cc();
    if (id.size() > 2 && id.rfind("nu", 0) == 0 &&
        std::all_of(id.begin() + 2, id.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      return mk_enum(std::stoull(id.substr(2)));
    }
    return mk_var(id);
  }
  throw ParseError(lx.pos, "expected a term");
}

bool atom_follows(Lexer& lx) {
  char c = lx.peek();
  if (c == '(' || c == '\\' || c == '#') return true;
  return Lexer::ident_start(c);
}

TermPtr parse_term_at(Lexer& lx) {
  TermPtr t = parse_atom(lx);
  while (atom_follows(lx)) t = mk_app(t, parse_atom(lx));
  return t;
}

StackPtr parse_stack_at(Lexer& lx) {
  char c = lx.peek();
  if (c == '?') {
    lx.consume('?');
    return mk_opaque_tail(lx.loose_ident("opaque stack tail"));
  }
  // A final element "w_<name>" is a stack bottom; anything else is a pushed
  // term followed by '.' and the rest of the stack.
  if (Lexer::ident_start(c)) {
    std::size_t saved = lx.pos;
    std::string id = lx.ident("stack element");
    if (id.rfind("w_", 0) == 0 && id.size() > 2) {
      lx.skip_ws();
      char nxt = lx.pos < lx.text.size() ? lx.text[lx.pos] : '\0';
      if (nxt == '\0' || nxt == ']' || nxt == ')') return mk_bottom(id.substr(2));
    }
    lx.pos = saved;
  }
  TermPtr head = parse_term_at(lx);
  lx.expect('.', "stack push separator");
  return mk_push(head, parse_stack_at(lx));
}

}  // namespace

TermPtr parse_term(const std::string& text) {
  Lexer lx(text);
  TermPtr t = parse_term_at(lx);
  if (!lx.eof()) throw ParseError(lx.pos, "trailing input after term");
  return t;
}

StackPtr parse_stack(const std::string& text) {
  Lexer lx(text);
  StackPtr s = parse_stack_at(lx);
  if (!lx.eof()) throw ParseError(lx.pos, "trailing input after stack");
  return s;
}

Process parse_process(const std::string& text) {
  // Split on '*' or the display star (U+22C6, bytes E2 8B 86).
  std::size_t split = std::string::npos;
  std::size_t len = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '*') {
      split = i;
      len = 1;
      break;
    }
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xe2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x8b &&
        static_cast<unsigned char>(text[i + 2]) == 0x86) {
      split = i;
      len = 3;
      break;
    }
  }
  if (split == std::string::npos) throw ParseError(text.size(), "expected '*' in process");
  return Process{parse_term(text.substr(0, split)), parse_stack(text.substr(split + len))};
}

}  // namespace rlz
