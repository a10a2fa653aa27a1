#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

#include "rlz/formula.hpp"
#include "rlz/parser.hpp"

namespace rlz {

namespace {

struct FLexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit FLexer(const std::string& t) : text(t) {}

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
  bool lookahead(const std::string& s) {
    skip_ws();
    return text.compare(pos, s.size(), s) == 0;
  }
  bool consume(const std::string& s) {
    skip_ws();
    if (text.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& s, const char* what) {
    if (!consume(s))
      throw ParseError(pos, "expected '" + s + "' (" + what + ")");
  }
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::optional<std::string> peek_ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) return std::nullopt;
    std::size_t end = pos;
    while (end < text.size() && ident_char(text[end])) ++end;
    return text.substr(pos, end - pos);
  }
  std::string ident(const char* what) {
    auto id = peek_ident();
    if (!id) throw ParseError(pos, std::string("expected identifier (") + what + ")");
    pos += id->size();
    return *id;
  }
  bool consume_ident(const std::string& want) {
    auto id = peek_ident();
    if (id && *id == want) {
      pos += id->size();
      return true;
    }
    return false;
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

const std::vector<std::string>& name_keywords() {
  static const std::vector<std::string> kw = {
      "reish", "hat",   "gimel", "sng",    "up",   "op",     "lift",   "olift",
      "ltt",   "rsucc", "hsucc", "top",    "bot",  "all",    "ex",     "eps",
      "in",    "sub",   "sub_eps", "neac", "extfun", "efun", "esurj"};
  return kw;
}

bool is_keyword(const std::string& id) {
  const auto& kw = name_keywords();
  return std::find(kw.begin(), kw.end(), id) != kw.end();
}

NameExprPtr parse_ne(FLexer& lx);

NamePtr require_lit(const NameExprPtr& e, FLexer& lx, const char* what) {
  if (auto* l = std::get_if<NLit>(&e->node)) return l->value;
  throw ParseError(lx.pos, std::string(what) + " requires a closed name expression");
}

NameExprPtr parse_ne_atom(FLexer& lx) {
  if (lx.consume("(")) {
    NameExprPtr e = parse_ne(lx);
    lx.expect(")", "closing name group");
    return e;
  }
  auto id = lx.peek_ident();
  if (!id) throw ParseError(lx.pos, "expected a name expression");

  if (*id == "reish") {
    lx.ident("reish");
    return ne_lit(mk_reish(lx.nat("reish index")));
  }
  if (*id == "hat") {
    lx.ident("hat");
    return ne_lit(mk_hat(lx.nat("hat index")));
  }
  if (*id == "gimel") {
    lx.ident("gimel");
    lx.expect("{", "gimel set");
    std::vector<NamePtr> xs;
    if (!lx.lookahead("}")) {
      do {
        xs.push_back(require_lit(parse_ne(lx), lx, "gimel member"));
      } while (lx.consume(","));
    }
    lx.expect("}", "gimel set");
    return ne_lit(mk_gimel(xs));
  }
  if (*id == "sng") {
    lx.ident("sng");
    return ne_lit(sng(require_lit(parse_ne_atom(lx), lx, "sng argument")));
  }
  if (*id == "up") {
    lx.ident("up");
    NamePtr a = require_lit(parse_ne_atom(lx), lx, "up argument");
    NamePtr b = require_lit(parse_ne_atom(lx), lx, "up argument");
    return ne_lit(up(a, b));
  }
  if (*id == "op") {
    lx.ident("op");
    NameExprPtr a = parse_ne_atom(lx);
    NameExprPtr b = parse_ne_atom(lx);
    auto* la = std::get_if<NLit>(&a->node);
    auto* lb = std::get_if<NLit>(&b->node);
    if (la && lb) return ne_lit(op(la->value, lb->value));
    return ne_op(a, b);
  }
  if (*id == "lift") {
    lx.ident("lift");
    lx.expect("{", "lift map");
    std::vector<std::pair<NamePtr, NamePtr>> f;
    if (!lx.lookahead("}")) {
      do {
        NamePtr from = require_lit(parse_ne(lx), lx, "lift key");
        lx.expect("->", "lift arrow");
        NamePtr to = require_lit(parse_ne(lx), lx, "lift value");
        f.emplace_back(from, to);
      } while (lx.consume(","));
    }
    lx.expect("}", "lift map");
    return ne_lit(lift(f));
  }
  if (*id == "olift") {
    lx.ident("olift");
    if (!lx.consume_ident("succ")) throw ParseError(lx.pos, "only 'olift succ n' is supported");
    return ne_lit(ordered_lift_succ(lx.nat("olift bound")));
  }
  if (*id == "ltt") {
    lx.ident("ltt");
    NamePtr a = require_lit(parse_ne_atom(lx), lx, "ltt argument");
    NamePtr b = require_lit(parse_ne_atom(lx), lx, "ltt argument");
    return ne_lit(lt_truth(a, b));
  }
  if (*id == "rsucc" || *id == "hsucc") {
    bool hat_flavor = *id == "hsucc";
    lx.ident("succ lift");
    lx.expect("(", "lift bound");
    std::uint64_t bound = lx.nat("lift bound");
    lx.expect(")", "lift bound");
    NameExprPtr arg = parse_ne_atom(lx);
    if (auto* la = std::get_if<NLit>(&arg->node)) {
      // keep the application: resolution decides in-domain vs out-of-domain
      (void)la;
    }
    return ne_lift(hat_flavor ? LiftFlavor::Hat : LiftFlavor::Reish, bound, arg);
  }
  if (is_keyword(*id)) throw ParseError(lx.pos, "unexpected keyword '" + *id + "'");
  lx.ident("variable");
  return ne_var(*id);
}

NameExprPtr parse_ne(FLexer& lx) { return parse_ne_atom(lx); }

SugaredPtr parse_imp(FLexer& lx);

// Relation symbols recognised after a left-hand name expression.
std::optional<SKind> peek_relop(FLexer& lx) {
  if (lx.lookahead("!eps")) return SKind::NotEps;
  if (lx.lookahead("!in")) return SKind::NotIn;
  if (lx.lookahead("!=")) return SKind::Neq;
  if (lx.lookahead("~=")) return SKind::SimEq;
  if (lx.lookahead("=")) return SKind::Eq;
  auto id = lx.peek_ident();
  if (id) {
    if (*id == "sub") return SKind::Sub;
    if (*id == "sub_eps") return SKind::SubEps;
    if (*id == "eps") return SKind::Eps;
    if (*id == "in") return SKind::In;
  }
  return std::nullopt;
}

void consume_relop(FLexer& lx, SKind k) {
  switch (k) {
    case SKind::NotEps:
      lx.expect("!eps", "relation");
      return;
    case SKind::NotIn:
      lx.expect("!in", "relation");
      return;
    case SKind::Neq:
      lx.expect("!=", "relation");
      return;
    case SKind::SimEq:
      lx.expect("~=", "relation");
      return;
    case SKind::Eq:
      lx.expect("=", "relation");
      return;
    case SKind::Sub:
      lx.ident("sub");
      return;
    case SKind::SubEps:
      lx.ident("sub_eps");
      return;
    case SKind::Eps:
      lx.ident("eps");
      return;
    case SKind::In:
      lx.ident("in");
      return;
    default:
      throw std::logic_error("not a relop");
  }
}

SugaredPtr parse_quantifier(FLexer& lx, bool universal) {
  std::string var = lx.ident("quantified variable");
  if (lx.consume("^gimel")) {
    lx.expect("{", "gimel bound");
    std::vector<NamePtr> range;
    if (!lx.lookahead("}")) {
      do {
        range.push_back(require_lit(parse_ne(lx), lx, "gimel bound member"));
      } while (lx.consume(","));
    }
    lx.expect("}", "gimel bound");
    lx.expect(".", "quantifier dot");
    if (!universal) throw ParseError(lx.pos, "ex with a gimel bound is not supported");
    auto s = std::make_shared<Sugared>();
    s->kind = SKind::ForallGimel;
    s->var = var;
    s->range = std::move(range);
    s->l = parse_imp(lx);
    return s;
  }
  if (lx.consume("^hat")) {
    lx.expect("(", "hat bound");
    std::uint64_t bound = lx.nat("hat bound");
    lx.expect(")", "hat bound");
    lx.expect(".", "quantifier dot");
    if (!universal) throw ParseError(lx.pos, "ex with a hat bound is not supported");
    auto s = std::make_shared<Sugared>();
    s->kind = SKind::ForallHat;
    s->var = var;
    s->bound = bound;
    s->l = parse_imp(lx);
    return s;
  }
  if (lx.consume("^rord")) {
    lx.expect("(", "rord bound");
    std::uint64_t bound = lx.nat("rord bound");
    lx.expect(")", "rord bound");
    lx.expect(".", "quantifier dot");
    if (!universal) throw ParseError(lx.pos, "ex with a rord bound is not supported");
    auto s = std::make_shared<Sugared>();
    s->kind = SKind::ForallROrd;
    s->var = var;
    s->bound = bound;
    s->l = parse_imp(lx);
    return s;
  }
  if (lx.consume_ident("eps")) {
    NameExprPtr range = parse_ne(lx);
    lx.expect(".", "quantifier dot");
    return s_quant_eps(universal ? SKind::ForallEpsIn : SKind::ExistsEpsIn, var, range,
                       parse_imp(lx));
  }
  lx.expect(".", "quantifier dot");
  return s_quant(universal ? SKind::Forall : SKind::Exists, var, parse_imp(lx));
}

SugaredPtr parse_prim(FLexer& lx) {
  if (lx.consume("(")) {
    SugaredPtr s = parse_imp(lx);
    lx.expect(")", "closing formula group");
    return s;
  }
  auto id = lx.peek_ident();
  if (id) {
    if (*id == "top") {
      lx.ident("top");
      return s_node(SKind::Top);
    }
    if (*id == "bot") {
      lx.ident("bot");
      return s_node(SKind::Bot);
    }
    if (*id == "all") {
      lx.ident("all");
      return parse_quantifier(lx, true);
    }
    if (*id == "ex") {
      lx.ident("ex");
      return parse_quantifier(lx, false);
    }
    if (*id == "neac") {
      lx.ident("neac");
      return schema::neac();
    }
    if (*id == "extfun") {
      lx.ident("extfun");
      lx.expect("(", "extfun");
      NameExprPtr f = parse_ne(lx);
      lx.expect(",", "extfun");
      lx.expect("{", "extfun domain");
      std::vector<NamePtr> range;
      if (!lx.lookahead("}")) {
        do {
          range.push_back(require_lit(parse_ne(lx), lx, "extfun domain member"));
        } while (lx.consume(","));
      }
      lx.expect("}", "extfun domain");
      lx.expect(")", "extfun");
      return schema::ext_fun(f, std::move(range));
    }
    if (*id == "efun") {
      lx.ident("efun");
      lx.expect("(", "efun");
      NameExprPtr f = parse_ne(lx);
      lx.expect(")", "efun");
      return schema::eps_fun(f);
    }
    if (*id == "esurj") {
      lx.ident("esurj");
      lx.expect("(", "esurj");
      NameExprPtr f = parse_ne(lx);
      lx.expect(",", "esurj");
      NameExprPtr a = parse_ne(lx);
      lx.expect(",", "esurj");
      NameExprPtr b = parse_ne(lx);
      lx.expect(")", "esurj");
      return schema::eps_surj(f, a, b);
    }
  }
  NameExprPtr lhs = parse_ne(lx);
  auto rel = peek_relop(lx);
  if (!rel) throw ParseError(lx.pos, "expected a relation symbol");
  consume_relop(lx, *rel);
  NameExprPtr rhs = parse_ne(lx);
  return s_atom(*rel, lhs, rhs);
}

SugaredPtr parse_and(FLexer& lx) {
  SugaredPtr l = parse_prim(lx);
  if (lx.consume("/\\")) return s_conn(SKind::And, l, parse_and(lx));
  return l;
}

SugaredPtr parse_or(FLexer& lx) {
  SugaredPtr l = parse_and(lx);
  if (lx.consume("\\/")) return s_conn(SKind::Or, l, parse_or(lx));
  return l;
}

SugaredPtr parse_imp(FLexer& lx) {
  SugaredPtr l = parse_or(lx);
  if (lx.consume("->")) return s_conn(SKind::Imp, l, parse_imp(lx));
  return l;
}

}  // namespace

SugaredPtr parse_sugared(const std::string& text) {
  FLexer lx(text);
  SugaredPtr s = parse_imp(lx);
  if (!lx.eof()) throw ParseError(lx.pos, "trailing input after formula");
  return s;
}

FormulaPtr parse_formula(const std::string& text) { return desugar(parse_sugared(text)); }

NameExprPtr parse_name_expr(const std::string& text) {
  FLexer lx(text);
  NameExprPtr e = parse_ne(lx);
  if (!lx.eof()) throw ParseError(lx.pos, "trailing input after name expression");
  return e;
}

NamePtr parse_name(const std::string& text) {
  NameExprPtr e = parse_name_expr(text);
  if (auto* l = std::get_if<NLit>(&e->node)) return l->value;
  throw ParseError(0, "name expression is not closed: " + text);
}

}  // namespace rlz
