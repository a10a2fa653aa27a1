#include "rlz/term.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rlz {

TermPtr mk_var(std::string name) { return std::make_shared<Term>(Term{Var{std::move(name)}}); }
TermPtr mk_app(TermPtr fn, TermPtr arg) {
  return std::make_shared<Term>(Term{App{std::move(fn), std::move(arg)}});
}
TermPtr mk_abs(std::string var, TermPtr body) {
  return std::make_shared<Term>(Term{Abs{std::move(var), std::move(body)}});
}
TermPtr mk_cc() {
  static const TermPtr cc = std::make_shared<Term>(Term{Cc{}});
  return cc;
}
TermPtr mk_kont(StackPtr stack) { return std::make_shared<Term>(Term{Kont{std::move(stack)}}); }
TermPtr mk_instr(std::string name) { return std::make_shared<Term>(Term{Instr{std::move(name)}}); }
TermPtr mk_enum(std::uint64_t index) { return std::make_shared<Term>(Term{EnumLit{index}}); }
TermPtr mk_opaque(std::string name) {
  return std::make_shared<Term>(Term{OpaqueTerm{std::move(name)}});
}

StackPtr mk_bottom(std::string name) {
  return std::make_shared<Stack>(Stack{Bottom{std::move(name)}});
}
StackPtr mk_push(TermPtr head, StackPtr rest) {
  return std::make_shared<Stack>(Stack{Push{std::move(head), std::move(rest)}});
}
StackPtr mk_opaque_tail(std::string name) {
  return std::make_shared<Stack>(Stack{OpaqueTail{std::move(name)}});
}

TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args) {
  TermPtr out = std::move(fn);
  for (const auto& a : args) out = mk_app(out, a);
  return out;
}

// ---------- Free variables ----------

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* a = std::get_if<App>(&t->node)) {
    collect_free(a->fn, bound, out);
    collect_free(a->arg, bound, out);
  } else if (auto* l = std::get_if<Abs>(&t->node)) {
    bool inserted = bound.insert(l->var).second;
    collect_free(l->body, bound, out);
    if (inserted) bound.erase(l->var);
  } else if (auto* k = std::get_if<Kont>(&t->node)) {
    StackPtr s = k->stack;
    while (auto* p = std::get_if<Push>(&s->node)) {
      collect_free(p->head, bound, out);
      s = p->rest;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

bool contains_kont(const TermPtr& t) {
  if (is_kont(*t)) return true;
  if (auto* a = std::get_if<App>(&t->node)) return contains_kont(a->fn) || contains_kont(a->arg);
  if (auto* l = std::get_if<Abs>(&t->node)) return contains_kont(l->body);
  return false;
}

bool contains_opaque(const TermPtr& t) {
  if (is_opaque(*t)) return true;
  if (auto* a = std::get_if<App>(&t->node)) return contains_opaque(a->fn) || contains_opaque(a->arg);
  if (auto* l = std::get_if<Abs>(&t->node)) return contains_opaque(l->body);
  if (auto* k = std::get_if<Kont>(&t->node)) return stack_contains_opaque(k->stack);
  return false;
}

bool stack_contains_opaque(const StackPtr& s) {
  if (std::holds_alternative<OpaqueTail>(s->node)) return true;
  if (auto* p = std::get_if<Push>(&s->node))
    return contains_opaque(p->head) || stack_contains_opaque(p->rest);
  return false;
}

bool is_realizer(const TermPtr& t) {
  return is_closed(t) && !contains_kont(t) && !contains_opaque(t);
}

// ---------- Substitution ----------

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  int n = 0;
  while (avoid.count(candidate)) candidate = base + "'" + std::to_string(++n);
  return candidate;
}

}  // namespace

TermPtr substitute(const TermPtr& body, const std::string& var, const TermPtr& value) {
  if (auto* v = std::get_if<Var>(&body->node)) {
    return v->name == var ? value : body;
  }
  if (auto* a = std::get_if<App>(&body->node)) {
    TermPtr fn = substitute(a->fn, var, value);
    TermPtr arg = substitute(a->arg, var, value);
    if (fn == a->fn && arg == a->arg) return body;
    return mk_app(fn, arg);
  }
  if (auto* l = std::get_if<Abs>(&body->node)) {
    if (l->var == var) return body;  // shadowed
    if (!free_vars(body).count(var)) return body;
    std::set<std::string> value_fv = free_vars(value);
    if (value_fv.count(l->var)) {
      // Rename the binder to avoid capturing a free variable of value.
      std::set<std::string> avoid = value_fv;
      auto body_fv = free_vars(l->body);
      avoid.insert(body_fv.begin(), body_fv.end());
      avoid.insert(var);
      std::string renamed = fresh_name(l->var, avoid);
      TermPtr new_body = substitute(l->body, l->var, mk_var(renamed));
      return mk_abs(renamed, substitute(new_body, var, value));
    }
    return mk_abs(l->var, substitute(l->body, var, value));
  }
  // cc, k[pi], instructions, literals, opaques: no variables inside terms of
  // a Kont payload are free (stacks hold closed terms), so nothing to do.
  return body;
}

// ---------- Alpha-equivalence and ordering ----------

namespace {

struct Binders {
  std::map<std::string, int> depth;
  std::vector<std::pair<std::string, int>> saved;
  int next = 0;

  int lookup(const std::string& v) const {
    auto it = depth.find(v);
    return it == depth.end() ? -1 : it->second;
  }
  void push(const std::string& v) {
    auto it = depth.find(v);
    saved.emplace_back(v, it == depth.end() ? -1 : it->second);
    depth[v] = next++;
  }
  void pop() {
    auto [v, old] = saved.back();
    saved.pop_back();
    if (old < 0)
      depth.erase(v);
    else
      depth[v] = old;
    --next;
  }
};

int cmp_terms(const TermPtr& a, const TermPtr& b, Binders& ba, Binders& bb);

int cmp_stacks(const StackPtr& a, const StackPtr& b, Binders& ba, Binders& bb) {
  int ka = static_cast<int>(a->node.index());
  int kb = static_cast<int>(b->node.index());
  if (ka != kb) return ka < kb ? -1 : 1;
  if (auto* x = std::get_if<Bottom>(&a->node)) {
    const auto& y = std::get<Bottom>(b->node);
    return x->name.compare(y.name);
  }
  if (auto* x = std::get_if<Push>(&a->node)) {
    const auto& y = std::get<Push>(b->node);
    if (int c = cmp_terms(x->head, y.head, ba, bb)) return c;
    return cmp_stacks(x->rest, y.rest, ba, bb);
  }
  const auto& x = std::get<OpaqueTail>(a->node);
  const auto& y = std::get<OpaqueTail>(b->node);
  return x.name.compare(y.name);
}

int cmp_terms(const TermPtr& a, const TermPtr& b, Binders& ba, Binders& bb) {
  int ka = static_cast<int>(a->node.index());
  int kb = static_cast<int>(b->node.index());
  if (ka != kb) return ka < kb ? -1 : 1;
  if (auto* x = std::get_if<Var>(&a->node)) {
    const auto& y = std::get<Var>(b->node);
    int da = ba.lookup(x->name);
    int db = bb.lookup(y.name);
    if (da != db) return da < db ? -1 : 1;
    if (da >= 0) return 0;  // same binder index
    return x->name.compare(y.name);
  }
  if (auto* x = std::get_if<App>(&a->node)) {
    const auto& y = std::get<App>(b->node);
    if (int c = cmp_terms(x->fn, y.fn, ba, bb)) return c;
    return cmp_terms(x->arg, y.arg, ba, bb);
  }
  if (auto* x = std::get_if<Abs>(&a->node)) {
    const auto& y = std::get<Abs>(b->node);
    ba.push(x->var);
    bb.push(y.var);
    int c = cmp_terms(x->body, y.body, ba, bb);
    ba.pop();
    bb.pop();
    return c;
  }
  if (std::holds_alternative<Cc>(a->node)) return 0;
  if (auto* x = std::get_if<Kont>(&a->node)) {
    const auto& y = std::get<Kont>(b->node);
    return cmp_stacks(x->stack, y.stack, ba, bb);
  }
  if (auto* x = std::get_if<Instr>(&a->node)) {
    const auto& y = std::get<Instr>(b->node);
    return x->name.compare(y.name);
  }
  if (auto* x = std::get_if<EnumLit>(&a->node)) {
    const auto& y = std::get<EnumLit>(b->node);
    if (x->index != y.index) return x->index < y.index ? -1 : 1;
    return 0;
  }
  const auto& x = std::get<OpaqueTerm>(a->node);
  const auto& y = std::get<OpaqueTerm>(b->node);
  return x.name.compare(y.name);
}

}  // namespace

int term_cmp(const TermPtr& a, const TermPtr& b) {
  Binders ba, bb;
  return cmp_terms(a, b, ba, bb);
}

int stack_cmp(const StackPtr& a, const StackPtr& b) {
  Binders ba, bb;
  return cmp_stacks(a, b, ba, bb);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }
bool alpha_eq_stack(const StackPtr& a, const StackPtr& b) { return stack_cmp(a, b) == 0; }
bool alpha_eq_process(const Process& a, const Process& b) {
  return alpha_eq(a.head, b.head) && alpha_eq_stack(a.tail, b.tail);
}

// ---------- Printing ----------

namespace {

// prec 0: bare (abstraction body allowed); prec 1: application function
// position; prec 2: argument / stack-element position.
void print_term(std::ostringstream& out, const TermPtr& t, int prec) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    out << v->name;
  } else if (auto* a = std::get_if<App>(&t->node)) {
    bool paren = prec >= 2;
    if (paren) out << '(';
    print_term(out, a->fn, 1);
    out << ' ';
    print_term(out, a->arg, 2);
    if (paren) out << ')';
  } else if (auto* l = std::get_if<Abs>(&t->node)) {
    bool paren = prec >= 1;
    if (paren) out << '(';
    out << '\\' << l->var << ". ";
    print_term(out, l->body, 0);
    if (paren) out << ')';
  } else if (std::holds_alternative<Cc>(t->node)) {
    out << "cc";
  } else if (auto* k = std::get_if<Kont>(&t->node)) {
    out << "k[" << to_string(k->stack) << ']';
  } else if (auto* i = std::get_if<Instr>(&t->node)) {
    out << '#' << i->name;
  } else if (auto* e = std::get_if<EnumLit>(&t->node)) {
    out << "nu" << e->index;
  } else {
    out << std::get<OpaqueTerm>(t->node).name;
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream out;
  print_term(out, t, 0);
  return out.str();
}

std::string to_string(const StackPtr& s) {
  std::ostringstream out;
  const Stack* cur = s.get();
  while (true) {
    if (auto* b = std::get_if<Bottom>(&cur->node)) {
      out << "w_" << b->name;
      break;
    }
    if (auto* o = std::get_if<OpaqueTail>(&cur->node)) {
      out << '?' << o->name;
      break;
    }
    const auto& p = std::get<Push>(cur->node);
    print_term(out, p.head, 2);
    out << '.';
    cur = p.rest.get();
  }
  return out.str();
}

std::string to_string(const Process& p) {
  return to_string(p.head) + " ⋆ " + to_string(p.tail);
}

// ---------- Free-variable resolution ----------

namespace {

TermPtr resolve_rec(const TermPtr& t,
                    const std::vector<std::pair<std::string, TermPtr>>& table,
                    bool free_to_opaque, std::set<std::string>& bound) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    if (bound.count(v->name)) return t;
    for (const auto& [name, repl] : table)
      if (name == v->name) return repl;
    if (free_to_opaque) return mk_opaque(v->name);
    return t;
  }
  if (auto* a = std::get_if<App>(&t->node)) {
    return mk_app(resolve_rec(a->fn, table, free_to_opaque, bound),
                  resolve_rec(a->arg, table, free_to_opaque, bound));
  }
  if (auto* l = std::get_if<Abs>(&t->node)) {
    bool inserted = bound.insert(l->var).second;
    TermPtr body = resolve_rec(l->body, table, free_to_opaque, bound);
    if (inserted) bound.erase(l->var);
    return mk_abs(l->var, body);
  }
  if (auto* k = std::get_if<Kont>(&t->node)) {
    return mk_kont(resolve_free_vars_stack(k->stack, table, free_to_opaque));
  }
  return t;
}

}  // namespace

TermPtr resolve_free_vars(const TermPtr& t,
                          const std::vector<std::pair<std::string, TermPtr>>& resolve,
                          bool free_to_opaque) {
  std::set<std::string> bound;
  return resolve_rec(t, resolve, free_to_opaque, bound);
}

StackPtr resolve_free_vars_stack(const StackPtr& s,
                                 const std::vector<std::pair<std::string, TermPtr>>& resolve,
                                 bool free_to_opaque) {
  if (auto* p = std::get_if<Push>(&s->node)) {
    std::set<std::string> bound;
    return mk_push(resolve_rec(p->head, resolve, free_to_opaque, bound),
                   resolve_free_vars_stack(p->rest, resolve, free_to_opaque));
  }
  return s;
}

}  // namespace rlz
