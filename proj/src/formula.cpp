#include "rlz/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rlz/parser.hpp"

namespace rlz {

// ---------- Name expressions ----------

NameExprPtr ne_var(std::string name) {
  return std::make_shared<NameExpr>(NameExpr{NVar{std::move(name)}});
}
NameExprPtr ne_lit(NamePtr value) {
  return std::make_shared<NameExpr>(NameExpr{NLit{std::move(value)}});
}
NameExprPtr ne_op(NameExprPtr l, NameExprPtr r) {
  return std::make_shared<NameExpr>(NameExpr{NOp{std::move(l), std::move(r)}});
}
NameExprPtr ne_lift(LiftFlavor flavor, std::uint64_t bound, NameExprPtr arg) {
  return std::make_shared<NameExpr>(NameExpr{NLiftApp{flavor, bound, std::move(arg)}});
}

namespace {

std::string name_display(const NamePtr& n);

// Compact display for the names the corpus builds; falls back to raw keys.
std::optional<std::uint64_t> match_reish(const NamePtr& n) {
  for (std::uint64_t k = 0; k <= 64; ++k) {
    if (name_eq(n, mk_reish(k))) return k;
    if (mk_reish(k)->rank > n->rank) break;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> match_hat(const NamePtr& n) {
  for (std::uint64_t k = 0; k <= 64; ++k) {
    if (name_eq(n, mk_hat(k))) return k;
    if (mk_hat(k)->rank > n->rank) break;
  }
  return std::nullopt;
}

std::string name_display(const NamePtr& n) {
  if (auto r = match_reish(n)) return "reish " + std::to_string(*r);
  if (auto h = match_hat(n)) return "hat " + std::to_string(*h);
  // gimel over recognisable members
  bool all_pi = std::all_of(n->entries.begin(), n->entries.end(), [](const NameEntry& e) {
    return std::holds_alternative<AllStacks>(e.spec);
  });
  if (all_pi) {
    std::string out = "gimel{";
    bool first = true;
    for (const auto& e : n->entries) {
      if (!first) out += ", ";
      first = false;
      out += name_display(e.child);
    }
    return out + "}";
  }
  return n->key;
}

}  // namespace

std::string to_string(const NameExprPtr& e) {
  if (auto* v = std::get_if<NVar>(&e->node)) return v->name;
  if (auto* l = std::get_if<NLit>(&e->node)) return name_display(l->value);
  if (auto* o = std::get_if<NOp>(&e->node))
    return "op (" + to_string(o->l) + ") (" + to_string(o->r) + ")";
  const auto& a = std::get<NLiftApp>(e->node);
  std::string fn = a.flavor == LiftFlavor::Hat ? "hsucc" : "rsucc";
  return fn + "(" + std::to_string(a.bound) + ") (" + to_string(a.arg) + ")";
}

// ---------- Formula factories ----------

FormulaPtr f_top() {
  static const FormulaPtr t = std::make_shared<Formula>(Formula{FTop{}});
  return t;
}
FormulaPtr f_bot() {
  static const FormulaPtr b = std::make_shared<Formula>(Formula{FBot{}});
  return b;
}
FormulaPtr f_atom(AtomKind kind, NameExprPtr lhs, NameExprPtr rhs) {
  return std::make_shared<Formula>(Formula{FAtom{kind, std::move(lhs), std::move(rhs)}});
}
FormulaPtr f_imp(FormulaPtr hyp, FormulaPtr concl) {
  return std::make_shared<Formula>(Formula{FImp{std::move(hyp), std::move(concl)}});
}
FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FForall{std::move(var), std::move(body)}});
}
FormulaPtr f_forall_gimel(std::string var, std::vector<NamePtr> range, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{FForallGimel{std::move(var), std::move(range), std::move(body)}});
}
FormulaPtr f_forall_hat(std::string var, std::uint64_t bound, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FForallHat{std::move(var), bound, std::move(body)}});
}
FormulaPtr f_forall_rord(std::string var, std::uint64_t bound, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FForallROrd{std::move(var), bound, std::move(body)}});
}

// ---------- Printing ----------

namespace {

// pos 0: bare / quantifier body; pos 1: implication conclusion; pos 2:
// implication hypothesis (quantifiers and implications need parentheses).
void print_formula(std::ostringstream& out, const FormulaPtr& f, int pos) {
  if (std::holds_alternative<FTop>(f->node)) {
    out << "top";
  } else if (std::holds_alternative<FBot>(f->node)) {
    out << "bot";
  } else if (auto* a = std::get_if<FAtom>(&f->node)) {
    out << to_string(a->lhs) << ' ' << atom_kind_str(a->kind) << ' ' << to_string(a->rhs);
  } else if (auto* i = std::get_if<FImp>(&f->node)) {
    bool paren = pos >= 2;
    if (paren) out << '(';
    print_formula(out, i->hyp, 2);
    out << " -> ";
    print_formula(out, i->concl, 1);
    if (paren) out << ')';
  } else {
    bool paren = pos >= 1;
    if (paren) out << '(';
    if (auto* q = std::get_if<FForall>(&f->node)) {
      out << "all " << q->var << ". ";
      print_formula(out, q->body, 0);
    } else if (auto* g = std::get_if<FForallGimel>(&f->node)) {
      out << "all " << g->var << "^gimel{";
      bool first = true;
      for (const auto& n : g->range) {
        if (!first) out << ", ";
        first = false;
        out << name_display(n);
      }
      out << "}. ";
      print_formula(out, g->body, 0);
    } else if (auto* h = std::get_if<FForallHat>(&f->node)) {
      out << "all " << h->var << "^hat(" << h->bound << "). ";
      print_formula(out, h->body, 0);
    } else {
      const auto& r = std::get<FForallROrd>(f->node);
      out << "all " << r.var << "^rord(" << r.bound << "). ";
      print_formula(out, r.body, 0);
    }
    if (paren) out << ')';
  }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::ostringstream out;
  print_formula(out, f, 0);
  return out.str();
}

// ---------- Structural equality up to bound-variable names ----------

namespace {

struct VarMap {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool same(const std::string& x, const std::string& y) const {
    for (std::size_t i = pairs.size(); i-- > 0;) {
      if (pairs[i].first == x || pairs[i].second == y)
        return pairs[i].first == x && pairs[i].second == y;
    }
    return x == y;  // both free
  }
};

bool ne_eq(const NameExprPtr& a, const NameExprPtr& b, const VarMap& vm) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* x = std::get_if<NVar>(&a->node))
    return vm.same(x->name, std::get<NVar>(b->node).name);
  if (auto* x = std::get_if<NLit>(&a->node))
    return name_eq(x->value, std::get<NLit>(b->node).value);
  if (auto* x = std::get_if<NOp>(&a->node)) {
    const auto& y = std::get<NOp>(b->node);
    return ne_eq(x->l, y.l, vm) && ne_eq(x->r, y.r, vm);
  }
  const auto& x = std::get<NLiftApp>(a->node);
  const auto& y = std::get<NLiftApp>(b->node);
  return x.flavor == y.flavor && x.bound == y.bound && ne_eq(x.arg, y.arg, vm);
}

bool feq(const FormulaPtr& a, const FormulaPtr& b, VarMap& vm) {
  if (a->node.index() != b->node.index()) return false;
  if (std::holds_alternative<FTop>(a->node) || std::holds_alternative<FBot>(a->node)) return true;
  if (auto* x = std::get_if<FAtom>(&a->node)) {
    const auto& y = std::get<FAtom>(b->node);
    return x->kind == y.kind && ne_eq(x->lhs, y.lhs, vm) && ne_eq(x->rhs, y.rhs, vm);
  }
  if (auto* x = std::get_if<FImp>(&a->node)) {
    const auto& y = std::get<FImp>(b->node);
    return feq(x->hyp, y.hyp, vm) && feq(x->concl, y.concl, vm);
  }
  if (auto* x = std::get_if<FForall>(&a->node)) {
    const auto& y = std::get<FForall>(b->node);
    vm.pairs.emplace_back(x->var, y.var);
    bool ok = feq(x->body, y.body, vm);
    vm.pairs.pop_back();
    return ok;
  }
  if (auto* x = std::get_if<FForallGimel>(&a->node)) {
    const auto& y = std::get<FForallGimel>(b->node);
    if (x->range.size() != y.range.size()) return false;
    for (std::size_t i = 0; i < x->range.size(); ++i)
      if (!name_eq(x->range[i], y.range[i])) return false;
    vm.pairs.emplace_back(x->var, y.var);
    bool ok = feq(x->body, y.body, vm);
    vm.pairs.pop_back();
    return ok;
  }
  if (auto* x = std::get_if<FForallHat>(&a->node)) {
    const auto& y = std::get<FForallHat>(b->node);
    if (x->bound != y.bound) return false;
    vm.pairs.emplace_back(x->var, y.var);
    bool ok = feq(x->body, y.body, vm);
    vm.pairs.pop_back();
    return ok;
  }
  const auto& x = std::get<FForallROrd>(a->node);
  const auto& y = std::get<FForallROrd>(b->node);
  if (x.bound != y.bound) return false;
  vm.pairs.emplace_back(x.var, y.var);
  bool ok = feq(x.body, y.body, vm);
  vm.pairs.pop_back();
  return ok;
}

}  // namespace

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  VarMap vm;
  return feq(a, b, vm);
}

// ---------- Free variables and substitution ----------

namespace {

void ne_free_vars(const NameExprPtr& e, const std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  if (auto* v = std::get_if<NVar>(&e->node)) {
    if (std::find(bound.begin(), bound.end(), v->name) == bound.end() &&
        std::find(out.begin(), out.end(), v->name) == out.end())
      out.push_back(v->name);
  } else if (auto* o = std::get_if<NOp>(&e->node)) {
    ne_free_vars(o->l, bound, out);
    ne_free_vars(o->r, bound, out);
  } else if (auto* a = std::get_if<NLiftApp>(&e->node)) {
    ne_free_vars(a->arg, bound, out);
  }
}

void f_free_vars(const FormulaPtr& f, std::vector<std::string>& bound,
                 std::vector<std::string>& out) {
  if (auto* a = std::get_if<FAtom>(&f->node)) {
    ne_free_vars(a->lhs, bound, out);
    ne_free_vars(a->rhs, bound, out);
  } else if (auto* i = std::get_if<FImp>(&f->node)) {
    f_free_vars(i->hyp, bound, out);
    f_free_vars(i->concl, bound, out);
  } else if (auto* q = std::get_if<FForall>(&f->node)) {
    bound.push_back(q->var);
    f_free_vars(q->body, bound, out);
    bound.pop_back();
  } else if (auto* g = std::get_if<FForallGimel>(&f->node)) {
    bound.push_back(g->var);
    f_free_vars(g->body, bound, out);
    bound.pop_back();
  } else if (auto* h = std::get_if<FForallHat>(&f->node)) {
    bound.push_back(h->var);
    f_free_vars(h->body, bound, out);
    bound.pop_back();
  } else if (auto* r = std::get_if<FForallROrd>(&f->node)) {
    bound.push_back(r->var);
    f_free_vars(r->body, bound, out);
    bound.pop_back();
  }
}

NameExprPtr ne_subst(const NameExprPtr& e, const std::string& var, const NamePtr& a) {
  if (auto* v = std::get_if<NVar>(&e->node)) return v->name == var ? ne_lit(a) : e;
  if (auto* o = std::get_if<NOp>(&e->node))
    return ne_op(ne_subst(o->l, var, a), ne_subst(o->r, var, a));
  if (auto* l = std::get_if<NLiftApp>(&e->node))
    return ne_lift(l->flavor, l->bound, ne_subst(l->arg, var, a));
  return e;
}

}  // namespace

std::vector<std::string> formula_free_vars(const FormulaPtr& f) {
  std::vector<std::string> bound, out;
  f_free_vars(f, bound, out);
  return out;
}

bool formula_closed(const FormulaPtr& f) { return formula_free_vars(f).empty(); }

FormulaPtr subst_name(const FormulaPtr& f, const std::string& var, const NamePtr& a) {
  if (auto* at = std::get_if<FAtom>(&f->node))
    return f_atom(at->kind, ne_subst(at->lhs, var, a), ne_subst(at->rhs, var, a));
  if (auto* i = std::get_if<FImp>(&f->node))
    return f_imp(subst_name(i->hyp, var, a), subst_name(i->concl, var, a));
  if (auto* q = std::get_if<FForall>(&f->node)) {
    if (q->var == var) return f;
    return f_forall(q->var, subst_name(q->body, var, a));
  }
  if (auto* g = std::get_if<FForallGimel>(&f->node)) {
    if (g->var == var) return f;
    return f_forall_gimel(g->var, g->range, subst_name(g->body, var, a));
  }
  if (auto* h = std::get_if<FForallHat>(&f->node)) {
    if (h->var == var) return f;
    return f_forall_hat(h->var, h->bound, subst_name(h->body, var, a));
  }
  if (auto* r = std::get_if<FForallROrd>(&f->node)) {
    if (r->var == var) return f;
    return f_forall_rord(r->var, r->bound, subst_name(r->body, var, a));
  }
  return f;
}

// ---------- Resolution ----------

namespace {

struct EvalResult {
  enum class Tag { Ok, EmptyFalsity, FullFalsity, HasVar } tag;
  NamePtr value;  // set when Ok
};

EvalResult ne_eval(const NameExprPtr& e) {
  if (std::holds_alternative<NVar>(e->node)) return {EvalResult::Tag::HasVar, nullptr};
  if (auto* l = std::get_if<NLit>(&e->node)) return {EvalResult::Tag::Ok, l->value};
  if (auto* o = std::get_if<NOp>(&e->node)) {
    EvalResult l = ne_eval(o->l);
    if (l.tag != EvalResult::Tag::Ok) return l;
    EvalResult r = ne_eval(o->r);
    if (r.tag != EvalResult::Tag::Ok) return r;
    return {EvalResult::Tag::Ok, op(l.value, r.value)};
  }
  const auto& a = std::get<NLiftApp>(e->node);
  EvalResult arg = ne_eval(a.arg);
  if (arg.tag != EvalResult::Tag::Ok) return arg;
  if (a.flavor == LiftFlavor::Hat) {
    for (std::uint64_t b = 0; b < a.bound; ++b)
      if (name_eq(arg.value, mk_hat(b))) return {EvalResult::Tag::Ok, mk_hat(b + 1)};
    return {EvalResult::Tag::EmptyFalsity, nullptr};
  }
  for (std::uint64_t b = 0; b < a.bound; ++b)
    if (name_eq(arg.value, mk_reish(b))) return {EvalResult::Tag::Ok, mk_reish(b + 1)};
  return {EvalResult::Tag::FullFalsity, nullptr};
}

}  // namespace

FormulaPtr resolve(const FormulaPtr& f) {
  if (auto* a = std::get_if<FAtom>(&f->node)) {
    EvalResult l = ne_eval(a->lhs);
    if (l.tag == EvalResult::Tag::EmptyFalsity) return f_top();
    if (l.tag == EvalResult::Tag::FullFalsity) return f_bot();
    EvalResult r = ne_eval(a->rhs);
    if (r.tag == EvalResult::Tag::EmptyFalsity) return f_top();
    if (r.tag == EvalResult::Tag::FullFalsity) return f_bot();
    if (l.tag == EvalResult::Tag::HasVar || r.tag == EvalResult::Tag::HasVar) return f;
    return f_atom(a->kind, ne_lit(l.value), ne_lit(r.value));
  }
  if (auto* i = std::get_if<FImp>(&f->node))
    return f_imp(resolve(i->hyp), resolve(i->concl));
  if (auto* q = std::get_if<FForall>(&f->node)) return f_forall(q->var, resolve(q->body));
  if (auto* g = std::get_if<FForallGimel>(&f->node))
    return f_forall_gimel(g->var, g->range, resolve(g->body));
  if (auto* h = std::get_if<FForallHat>(&f->node))
    return f_forall_hat(h->var, h->bound, resolve(h->body));
  if (auto* r = std::get_if<FForallROrd>(&f->node))
    return f_forall_rord(r->var, r->bound, resolve(r->body));
  return f;
}

bool is_resolved(const FormulaPtr& f) {
  if (auto* a = std::get_if<FAtom>(&f->node))
    return std::holds_alternative<NLit>(a->lhs->node) &&
           std::holds_alternative<NLit>(a->rhs->node);
  if (auto* i = std::get_if<FImp>(&f->node))
    return is_resolved(i->hyp) && is_resolved(i->concl);
  if (auto* q = std::get_if<FForall>(&f->node)) return is_resolved(q->body);
  if (auto* g = std::get_if<FForallGimel>(&f->node)) return is_resolved(g->body);
  if (auto* h = std::get_if<FForallHat>(&f->node)) return is_resolved(h->body);
  if (auto* r = std::get_if<FForallROrd>(&f->node)) return is_resolved(r->body);
  return true;
}

// ---------- Name collection ----------

namespace {

void ne_names(const NameExprPtr& e, std::vector<NamePtr>& out) {
  if (auto* l = std::get_if<NLit>(&e->node)) {
    out.push_back(l->value);
  } else if (auto* o = std::get_if<NOp>(&e->node)) {
    ne_names(o->l, out);
    ne_names(o->r, out);
  } else if (auto* a = std::get_if<NLiftApp>(&e->node)) {
    ne_names(a->arg, out);
  }
}

void f_names(const FormulaPtr& f, std::vector<NamePtr>& out) {
  if (auto* a = std::get_if<FAtom>(&f->node)) {
    ne_names(a->lhs, out);
    ne_names(a->rhs, out);
  } else if (auto* i = std::get_if<FImp>(&f->node)) {
    f_names(i->hyp, out);
    f_names(i->concl, out);
  } else if (auto* q = std::get_if<FForall>(&f->node)) {
    f_names(q->body, out);
  } else if (auto* g = std::get_if<FForallGimel>(&f->node)) {
    for (const auto& n : g->range) out.push_back(n);
    f_names(g->body, out);
  } else if (auto* h = std::get_if<FForallHat>(&f->node)) {
    for (std::uint64_t b = 0; b < h->bound; ++b) out.push_back(mk_hat(b));
    f_names(h->body, out);
  } else if (auto* r = std::get_if<FForallROrd>(&f->node)) {
    for (std::uint64_t a2 = 0; a2 < r->bound; ++a2) out.push_back(mk_reish(a2));
    f_names(r->body, out);
  }
}

bool name_uses_enum(const NamePtr& n, std::set<std::string>& seen) {
  if (!seen.insert(n->key).second) return false;
  for (const auto& e : n->entries) {
    if (auto* p = std::get_if<PrefixAll>(&e.spec)) {
      for (const auto& t : p->prefix)
        if (is_enum(*t)) return true;
    }
    if (name_uses_enum(e.child, seen)) return true;
  }
  return false;
}

bool f_mentions_hat(const FormulaPtr& f) {
  if (std::holds_alternative<FForallHat>(f->node)) return true;
  if (auto* a = std::get_if<FAtom>(&f->node)) {
    std::vector<NamePtr> names;
    ne_names(a->lhs, names);
    ne_names(a->rhs, names);
    std::set<std::string> seen;
    for (const auto& n : names)
      if (name_uses_enum(n, seen)) return true;
    // lift applications of hat flavour
    std::vector<NameExprPtr> stack = {a->lhs, a->rhs};
    while (!stack.empty()) {
      NameExprPtr e = stack.back();
      stack.pop_back();
      if (auto* l = std::get_if<NLiftApp>(&e->node)) {
        if (l->flavor == LiftFlavor::Hat) return true;
        stack.push_back(l->arg);
      } else if (auto* o = std::get_if<NOp>(&e->node)) {
        stack.push_back(o->l);
        stack.push_back(o->r);
      }
    }
    return false;
  }
  if (auto* i = std::get_if<FImp>(&f->node))
    return f_mentions_hat(i->hyp) || f_mentions_hat(i->concl);
  if (auto* q = std::get_if<FForall>(&f->node)) return f_mentions_hat(q->body);
  if (auto* g = std::get_if<FForallGimel>(&f->node)) {
    std::set<std::string> seen;
    for (const auto& n : g->range)
      if (name_uses_enum(n, seen)) return true;
    return f_mentions_hat(g->body);
  }
  if (auto* r = std::get_if<FForallROrd>(&f->node)) return f_mentions_hat(r->body);
  return false;
}

}  // namespace

std::vector<NamePtr> formula_names(const FormulaPtr& f) {
  std::vector<NamePtr> out;
  f_names(f, out);
  return out;
}

bool mentions_hat(const FormulaPtr& f) { return f_mentions_hat(f); }

// ---------- Sugar ----------

SugaredPtr s_node(SKind kind) {
  auto s = std::make_shared<Sugared>();
  s->kind = kind;
  return s;
}
SugaredPtr s_atom(SKind kind, NameExprPtr a, NameExprPtr b) {
  auto s = std::make_shared<Sugared>();
  s->kind = kind;
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}
SugaredPtr s_conn(SKind kind, SugaredPtr l, SugaredPtr r) {
  auto s = std::make_shared<Sugared>();
  s->kind = kind;
  s->l = std::move(l);
  s->r = std::move(r);
  return s;
}
SugaredPtr s_quant(SKind kind, std::string var, SugaredPtr body) {
  auto s = std::make_shared<Sugared>();
  s->kind = kind;
  s->var = std::move(var);
  s->l = std::move(body);
  return s;
}
SugaredPtr s_quant_eps(SKind kind, std::string var, NameExprPtr range, SugaredPtr body) {
  auto s = std::make_shared<Sugared>();
  s->kind = kind;
  s->var = std::move(var);
  s->a = std::move(range);
  s->l = std::move(body);
  return s;
}

namespace {

std::string fresh_var(const std::string& base, const std::vector<std::string>& avoid) {
  std::string c = base;
  int n = 0;
  while (std::find(avoid.begin(), avoid.end(), c) != avoid.end())
    c = base + std::to_string(++n);
  return c;
}

}  // namespace

FormulaPtr desugar(const SugaredPtr& s) {
  switch (s->kind) {
    case SKind::Top:
      return f_top();
    case SKind::Bot:
      return f_bot();
    case SKind::NotEps:
      return f_atom(AtomKind::NotEps, s->a, s->b);
    case SKind::Neq:
      return f_atom(AtomKind::Neq, s->a, s->b);
    case SKind::NotIn:
      return f_atom(AtomKind::NotIn, s->a, s->b);
    case SKind::Sub:
      return f_atom(AtomKind::Sub, s->a, s->b);
    case SKind::Imp:
      return f_imp(desugar(s->l), desugar(s->r));
    case SKind::Forall:
      return f_forall(s->var, desugar(s->l));
    case SKind::ForallGimel:
      return f_forall_gimel(s->var, s->range, desugar(s->l));
    case SKind::ForallHat:
      return f_forall_hat(s->var, s->bound, desugar(s->l));
    case SKind::ForallROrd:
      return f_forall_rord(s->var, s->bound, desugar(s->l));

    case SKind::Eps:  // a eps b  ==  a !eps b -> bot
      return f_imp(f_atom(AtomKind::NotEps, s->a, s->b), f_bot());
    case SKind::In:  // a in b  ==  a !in b -> bot
      return f_imp(f_atom(AtomKind::NotIn, s->a, s->b), f_bot());
    case SKind::Eq:  // a = b  ==  a != b -> bot
      return f_imp(f_atom(AtomKind::Neq, s->a, s->b), f_bot());
    case SKind::SimEq:  // a ~= b  ==  (a sub b -> (b sub a -> bot)) -> bot
      return f_imp(f_imp(f_atom(AtomKind::Sub, s->a, s->b),
                         f_imp(f_atom(AtomKind::Sub, s->b, s->a), f_bot())),
                   f_bot());
    case SKind::And:  // p /\ q  ==  (p -> (q -> bot)) -> bot
      return f_imp(f_imp(desugar(s->l), f_imp(desugar(s->r), f_bot())), f_bot());
    case SKind::Or:  // p \/ q  ==  (p -> bot) -> ((q -> bot) -> bot)
      return f_imp(f_imp(desugar(s->l), f_bot()),
                   f_imp(f_imp(desugar(s->r), f_bot()), f_bot()));
    case SKind::Exists:  // ex x. p  ==  (all x. (p -> bot)) -> bot
      return f_imp(f_forall(s->var, f_imp(desugar(s->l), f_bot())), f_bot());
    case SKind::ForallEpsIn:  // all x eps a. p  ==  all x. (x eps a -> p)
      return f_forall(s->var,
                      f_imp(f_imp(f_atom(AtomKind::NotEps, ne_var(s->var), s->a), f_bot()),
                            desugar(s->l)));
    case SKind::ExistsEpsIn:  // ex x eps a. p  ==  (all x. (p -> x !eps a)) -> bot
      return f_imp(
          f_forall(s->var, f_imp(desugar(s->l), f_atom(AtomKind::NotEps, ne_var(s->var), s->a))),
          f_bot());
    case SKind::SubEps: {  // a sub_eps b  ==  all z. (z eps a -> z eps b)
      std::vector<std::string> avoid;
      ne_free_vars(s->a, {}, avoid);
      ne_free_vars(s->b, {}, avoid);
      std::string z = fresh_var("z", avoid);
      return f_forall(z, f_imp(f_imp(f_atom(AtomKind::NotEps, ne_var(z), s->a), f_bot()),
                               f_imp(f_atom(AtomKind::NotEps, ne_var(z), s->b), f_bot())));
    }
  }
  throw std::logic_error("desugar: unhandled node");
}

// ---------- Schemas ----------

namespace schema {

SugaredPtr ext_fun(NameExprPtr f, std::vector<NamePtr> range) {
  // all x1^A all x2^A all y1 all y2
  //   (x1 ~= x2 -> op(x1,y1) eps f -> op(x2,y2) eps f -> (y1 ~= y2 -> bot) -> bot)
  auto x1 = ne_var("x1"), x2 = ne_var("x2"), y1 = ne_var("y1"), y2 = ne_var("y2");
  SugaredPtr body = s_conn(
      SKind::Imp, s_atom(SKind::SimEq, x1, x2),
      s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x1, y1), f),
             s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x2, y2), f),
                    s_conn(SKind::Imp,
                           s_conn(SKind::Imp, s_atom(SKind::SimEq, y1, y2), s_node(SKind::Bot)),
                           s_node(SKind::Bot)))));
  SugaredPtr q = s_quant(SKind::Forall, "y2", body);
  q = s_quant(SKind::Forall, "y1", q);
  auto g2 = std::make_shared<Sugared>();
  g2->kind = SKind::ForallGimel;
  g2->var = "x2";
  g2->l = q;
  g2->range = range;
  auto g1 = std::make_shared<Sugared>();
  g1->kind = SKind::ForallGimel;
  g1->var = "x1";
  g1->l = g2;
  g1->range = std::move(range);
  return g1;
}

SugaredPtr eps_fun(NameExprPtr f) {
  // all x all y all y' (op(x,y) eps f -> op(x,y') eps f -> y != y' -> bot)
  auto x = ne_var("x"), y = ne_var("y"), y2 = ne_var("y'");
  SugaredPtr body =
      s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x, y), f),
             s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x, y2), f),
                    s_conn(SKind::Imp, s_atom(SKind::Neq, y, y2), s_node(SKind::Bot))));
  return s_quant(SKind::Forall, "x",
                 s_quant(SKind::Forall, "y", s_quant(SKind::Forall, "y'", body)));
}

SugaredPtr eps_surj(NameExprPtr f, NameExprPtr a, NameExprPtr b) {
  // all y (y eps b -> (all x (op(x,y) eps f -> x !eps a)) -> bot)
  auto x = ne_var("x"), y = ne_var("y");
  SugaredPtr inner = s_quant(SKind::Forall, "x",
                             s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x, y), f),
                                    s_atom(SKind::NotEps, x, a)));
  SugaredPtr body = s_conn(SKind::Imp, s_atom(SKind::Eps, y, b),
                           s_conn(SKind::Imp, inner, s_node(SKind::Bot)));
  return s_quant(SKind::Forall, "y", body);
}

SugaredPtr neac() {
  // all r ex f ( single-valued /\ (f sub_eps r /\ totality-on-r) )
  auto r = ne_var("r"), f = ne_var("f");
  auto x = ne_var("x"), y = ne_var("y"), y2 = ne_var("y'");
  SugaredPtr single = s_quant(
      SKind::Forall, "x",
      s_quant(SKind::Forall, "y",
              s_quant(SKind::Forall, "y'",
                      s_conn(SKind::Imp,
                             s_conn(SKind::And, s_atom(SKind::Eps, ne_op(x, y), f),
                                    s_atom(SKind::Eps, ne_op(x, y2), f)),
                             s_atom(SKind::Eq, y, y2)))));
  SugaredPtr total = s_quant(
      SKind::Forall, "x",
      s_quant(SKind::Forall, "y",
              s_quant(SKind::Exists, "y'",
                      s_conn(SKind::Imp, s_atom(SKind::Eps, ne_op(x, y), r),
                             s_atom(SKind::Eps, ne_op(x, y2), f)))));
  SugaredPtr body =
      s_conn(SKind::And, single, s_conn(SKind::And, s_atom(SKind::SubEps, f, r), total));
  return s_quant(SKind::Forall, "r", s_quant(SKind::Exists, "f", body));
}

}  // namespace schema

// ---------- One-level falsity decomposition ----------

FalsityShape falsity_shape(const FormulaPtr& f, const NameUniverse* universe) {
  if (std::holds_alternative<FTop>(f->node)) return ShapeEmpty{};
  if (std::holds_alternative<FBot>(f->node)) return ShapeFull{};
  if (auto* a = std::get_if<FAtom>(&f->node)) {
    auto* l = std::get_if<NLit>(&a->lhs->node);
    auto* r = std::get_if<NLit>(&a->rhs->node);
    if (!l || !r) throw std::runtime_error("falsity_shape: unresolved atom " + to_string(f));
    ShapeAtom shape;
    for (const auto& c : falsity_atomic(a->kind, l->value, r->value)) {
      ShapeAtom::Case cc;
      for (const auto& ob : c.slots)
        cc.slots.push_back(f_atom(ob.kind, ne_lit(ob.lhs), ne_lit(ob.rhs)));
      cc.tail = c.tail;
      shape.cases.push_back(std::move(cc));
    }
    return shape;
  }
  if (auto* i = std::get_if<FImp>(&f->node)) return ShapeImp{i->hyp, i->concl};
  if (auto* q = std::get_if<FForall>(&f->node)) {
    if (!universe)
      throw std::runtime_error("falsity_shape: unbounded forall needs a universe: " +
                               to_string(f));
    ShapeFamily fam;
    for (const auto& n : universe->sorted())
      fam.instances.push_back({n, std::nullopt, resolve(subst_name(q->body, q->var, n))});
    return fam;
  }
  if (auto* g = std::get_if<FForallGimel>(&f->node)) {
    ShapeFamily fam;
    for (const auto& n : g->range)
      fam.instances.push_back({n, std::nullopt, resolve(subst_name(g->body, g->var, n))});
    return fam;
  }
  if (auto* h = std::get_if<FForallHat>(&f->node)) {
    ShapeFamily fam;
    for (std::uint64_t b = 0; b < h->bound; ++b)
      fam.instances.push_back({mk_hat(b), b, resolve(subst_name(h->body, h->var, mk_hat(b)))});
    return fam;
  }
  const auto& r = std::get<FForallROrd>(f->node);
  ShapeFamily fam;
  fam.class_surrogate = true;
  for (std::uint64_t a2 = 0; a2 < r.bound; ++a2)
    fam.instances.push_back(
        {mk_reish(a2), std::nullopt, resolve(subst_name(r.body, r.var, mk_reish(a2)))});
  return fam;
}

}  // namespace rlz
