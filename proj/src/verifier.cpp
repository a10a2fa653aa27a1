#include "rlz/verifier.hpp"

#include <algorithm>
#include <sstream>

#include "rlz/combinators.hpp"

namespace rlz {

// ---------- Traces ----------

std::size_t TraceNode::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

namespace {

bool is_enumeration_rule(const std::string& rule) {
  return rule == "FORALL-INTRO" || rule == "CASE-SPLIT" || rule == "RANK-IND";
}

// A branch is degenerate when it closes through an empty-falsity
// observation somewhere; those correspond to the proofs' "the result is
// immediate" cases and are excluded from uniformity comparison.
bool subtree_degenerate(const TraceNode& n) {
  if (n.vacuous) return true;
  return std::any_of(n.children.begin(), n.children.end(), subtree_degenerate);
}

}  // namespace

std::string TraceNode::skeleton() const {
  if (is_enumeration_rule(rule)) {
    // collapse enumeration width: the set of distinct non-degenerate branch
    // skeletons, so instances differing only in how many sub-cases they
    // enumerate still compare equal
    std::set<std::string> skels;
    for (const auto& c : children)
      if (!subtree_degenerate(c)) skels.insert(c.skeleton());
    std::string out = rule + "{";
    bool first = true;
    for (const auto& s : skels) {
      if (!first) out += ",";
      first = false;
      out += s;
    }
    return out + "}";
  }
  std::string out = rule + "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ",";
    out += children[i].skeleton();
  }
  return out + ")";
}

std::string TraceNode::render(int indent) const {
  std::string out(static_cast<std::size_t>(indent) * 2, ' ');
  out += rule;
  if (!detail.empty()) out += "  " + detail;
  out += "\n";
  for (const auto& c : children) out += c.render(indent + 1);
  return out;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Accepted:
      return "accepted";
    case Outcome::Rejected:
      return "rejected";
    case Outcome::FuelOut:
      return "fuel-out";
  }
  return "?";
}

namespace {

bool subtree_vacuous(const TraceNode& n) {
  if (n.children.empty()) return n.vacuous;
  return std::all_of(n.children.begin(), n.children.end(), subtree_vacuous);
}

void uniformity_walk(const TraceNode& n, std::vector<std::string>& out) {
  if (is_enumeration_rule(n.rule)) {
    std::string common;
    for (const auto& c : n.children) {
      if (subtree_degenerate(c)) continue;
      std::string sk = c.skeleton();
      if (common.empty()) {
        common = sk;
      } else if (sk != common) {
        out.push_back(n.rule + ": branch '" + c.detail + "' deviates from the common skeleton");
      }
    }
  }
  for (const auto& c : n.children) uniformity_walk(c, out);
}

}  // namespace

std::vector<std::string> uniformity_violations(const TraceNode& trace) {
  std::vector<std::string> out;
  uniformity_walk(trace, out);
  return out;
}

// ---------- Falsity-value estimates ----------

namespace {

bool spec_denotes_empty(const StackSpec& s) {
  if (auto* f = std::get_if<FiniteStacks>(&s)) return f->stacks.empty();
  return false;
}

std::vector<std::pair<NamePtr, FormulaPtr>> family_instances(const FormulaPtr& phi,
                                                             const NameUniverse& universe) {
  std::vector<std::pair<NamePtr, FormulaPtr>> out;
  if (auto* q = std::get_if<FForall>(&phi->node)) {
    for (const auto& n : universe.sorted())
      out.emplace_back(n, resolve(subst_name(q->body, q->var, n)));
  } else if (auto* g = std::get_if<FForallGimel>(&phi->node)) {
    for (const auto& n : g->range)
      out.emplace_back(n, resolve(subst_name(g->body, g->var, n)));
  } else if (auto* h = std::get_if<FForallHat>(&phi->node)) {
    for (std::uint64_t b = 0; b < h->bound; ++b)
      out.emplace_back(mk_hat(b), resolve(subst_name(h->body, h->var, mk_hat(b))));
  } else if (auto* r = std::get_if<FForallROrd>(&phi->node)) {
    for (std::uint64_t a = 0; a < r->bound; ++a)
      out.emplace_back(mk_reish(a), resolve(subst_name(r->body, r->var, mk_reish(a))));
  }
  return out;
}

bool is_family(const FormulaPtr& phi) {
  return std::holds_alternative<FForall>(phi->node) ||
         std::holds_alternative<FForallGimel>(phi->node) ||
         std::holds_alternative<FForallHat>(phi->node) ||
         std::holds_alternative<FForallROrd>(phi->node);
}

std::pair<NamePtr, NamePtr> atom_names(const FormulaPtr& phi) {
  const auto& a = std::get<FAtom>(phi->node);
  auto* l = std::get_if<NLit>(&a.lhs->node);
  auto* r = std::get_if<NLit>(&a.rhs->node);
  if (!l || !r) throw std::runtime_error("verifier: unresolved atom " + to_string(phi));
  return {l->value, r->value};
}

}  // namespace

bool falsity_empty(const FormulaPtr& phi, const NameUniverse& universe) {
  if (std::holds_alternative<FTop>(phi->node)) return true;
  if (std::holds_alternative<FBot>(phi->node)) return false;
  if (auto* at = std::get_if<FAtom>(&phi->node)) {
    auto [a, b] = atom_names(phi);
    switch (at->kind) {
      case AtomKind::Neq:
        return !name_eq(a, b);
      case AtomKind::NotEps: {
        for (const auto& e : b->entries)
          if (name_eq(e.child, a) && !spec_denotes_empty(e.spec)) return false;
        return true;
      }
      case AtomKind::Sub:
        return a->entries.empty();
      case AtomKind::NotIn:
        return b->entries.empty();
    }
  }
  if (auto* i = std::get_if<FImp>(&phi->node)) return falsity_empty(i->concl, universe);
  if (is_family(phi)) {
    for (const auto& [n, inst] : family_instances(phi, universe))
      if (!falsity_empty(inst, universe)) return false;
    return true;
  }
  return false;
}

bool falsity_full(const FormulaPtr& phi, const NameUniverse& universe) {
  if (std::holds_alternative<FBot>(phi->node)) return true;
  if (auto* at = std::get_if<FAtom>(&phi->node)) {
    auto [a, b] = atom_names(phi);
    if (at->kind == AtomKind::Neq) return name_eq(a, b);
    if (at->kind == AtomKind::NotEps) {
      for (const auto& e : b->entries)
        if (name_eq(e.child, a) && std::holds_alternative<AllStacks>(e.spec)) return true;
    }
    return false;
  }
  if (std::holds_alternative<FForallHat>(phi->node)) return false;  // nu-prefixed members
  if (is_family(phi)) {
    for (const auto& [n, inst] : family_instances(phi, universe))
      if (falsity_full(inst, universe)) return true;
  }
  return false;
}

// ---------- Instance matching ----------

namespace {

void collect_ne_candidates(const NameExprPtr& pat, const NameExprPtr& tgt,
                           const std::string& var, std::vector<NamePtr>& out) {
  if (auto* v = std::get_if<NVar>(&pat->node)) {
    if (v->name == var) {
      if (auto* lit = std::get_if<NLit>(&tgt->node)) out.push_back(lit->value);
    }
    return;
  }
  if (auto* o = std::get_if<NOp>(&pat->node)) {
    if (auto* to = std::get_if<NOp>(&tgt->node)) {
      collect_ne_candidates(o->l, to->l, var, out);
      collect_ne_candidates(o->r, to->r, var, out);
    }
    return;
  }
  if (auto* l = std::get_if<NLiftApp>(&pat->node)) {
    if (auto* tl = std::get_if<NLiftApp>(&tgt->node))
      collect_ne_candidates(l->arg, tl->arg, var, out);
    return;
  }
}

// Names that could instantiate `var` when matching the body of a universal
// against a concrete target. A leading quantifier in the pattern may also be
// skipped: the target can be an instance of a deeper body.
void collect_candidates(const FormulaPtr& pat, const FormulaPtr& tgt, const std::string& var,
                        std::vector<NamePtr>& out) {
  if (auto* q = std::get_if<FForall>(&pat->node)) {
    if (q->var != var) {
      collect_candidates(q->body, tgt, var, out);
      if (auto* tq = std::get_if<FForall>(&tgt->node))
        collect_candidates(q->body, tq->body, var, out);
    }
    return;
  }
  if (pat->node.index() != tgt->node.index()) return;
  if (auto* a = std::get_if<FAtom>(&pat->node)) {
    const auto& ta = std::get<FAtom>(tgt->node);
    if (a->kind != ta.kind) return;
    collect_ne_candidates(a->lhs, ta.lhs, var, out);
    collect_ne_candidates(a->rhs, ta.rhs, var, out);
    return;
  }
  if (auto* i = std::get_if<FImp>(&pat->node)) {
    const auto& ti = std::get<FImp>(tgt->node);
    collect_candidates(i->hyp, ti.hyp, var, out);
    collect_candidates(i->concl, ti.concl, var, out);
    return;
  }
  if (auto* g = std::get_if<FForallGimel>(&pat->node)) {
    if (g->var != var) collect_candidates(g->body, std::get<FForallGimel>(tgt->node).body, var, out);
    return;
  }
  if (auto* h = std::get_if<FForallHat>(&pat->node)) {
    if (h->var != var) collect_candidates(h->body, std::get<FForallHat>(tgt->node).body, var, out);
    return;
  }
  if (auto* r = std::get_if<FForallROrd>(&pat->node)) {
    if (r->var != var) collect_candidates(r->body, std::get<FForallROrd>(tgt->node).body, var, out);
    return;
  }
}

}  // namespace

bool falsity_subset(const FormulaPtr& phi1, const FormulaPtr& phi2,
                    const NameUniverse& universe) {
  if (formula_eq(phi1, phi2)) return true;
  if (falsity_empty(phi1, universe)) return true;
  if (std::holds_alternative<FBot>(phi2->node)) return true;

  // an instance of a universal family is contained in the family; hat
  // families are excluded since their members carry a nu prefix
  std::string var;
  FormulaPtr body;
  std::vector<NamePtr> allowed;  // empty = unrestricted
  bool family = false;
  if (auto* q = std::get_if<FForall>(&phi2->node)) {
    var = q->var;
    body = q->body;
    family = true;
  } else if (auto* g = std::get_if<FForallGimel>(&phi2->node)) {
    var = g->var;
    body = g->body;
    allowed = g->range;
    if (allowed.empty()) return false;
    family = true;
  } else if (auto* r = std::get_if<FForallROrd>(&phi2->node)) {
    var = r->var;
    body = r->body;
    if (r->bound == 0) return false;
    for (std::uint64_t a = 0; a < r->bound; ++a) allowed.push_back(mk_reish(a));
    family = true;
  }
  if (family) {
    std::vector<NamePtr> candidates;
    collect_candidates(body, phi1, var, candidates);
    for (const auto& n : candidates) {
      if (!allowed.empty() &&
          std::none_of(allowed.begin(), allowed.end(),
                       [&](const NamePtr& m) { return name_eq(m, n); }))
        continue;
      FormulaPtr inst = resolve(subst_name(body, var, n));
      if (formula_eq(inst, phi1) || falsity_subset(phi1, inst, universe)) return true;
    }
    return false;
  }

  // atom against atom: entrywise stack-set inclusion
  if (std::holds_alternative<FAtom>(phi1->node) && std::holds_alternative<FAtom>(phi2->node)) {
    const auto& a1 = std::get<FAtom>(phi1->node);
    const auto& a2 = std::get<FAtom>(phi2->node);
    if (a1.kind == AtomKind::NotEps && a2.kind == AtomKind::NotEps) {
      auto [l1, r1] = atom_names(phi1);
      auto [l2, r2] = atom_names(phi2);
      if (!name_eq(l1, l2)) return false;
      for (const auto& e1 : r1->entries) {
        if (!name_eq(e1.child, l1)) continue;
        bool covered = false;
        for (const auto& e2 : r2->entries)
          covered = covered || (name_eq(e2.child, l2) && spec_subset(e1.spec, e2.spec));
        if (!covered) return false;
      }
      return true;
    }
  }

  if (falsity_full(phi1, universe)) return falsity_full(phi2, universe);
  return false;
}

// ---------- Opaque-tail substitution ----------

namespace {

StackPtr subst_tail_stack(const StackPtr& s, const std::string& id, const StackPtr& repl);

TermPtr subst_tail_term(const TermPtr& t, const std::string& id, const StackPtr& repl) {
  if (auto* a = std::get_if<App>(&t->node)) {
    TermPtr fn = subst_tail_term(a->fn, id, repl);
    TermPtr arg = subst_tail_term(a->arg, id, repl);
    if (fn == a->fn && arg == a->arg) return t;
    return mk_app(fn, arg);
  }
  if (auto* l = std::get_if<Abs>(&t->node)) {
    TermPtr body = subst_tail_term(l->body, id, repl);
    if (body == l->body) return t;
    return mk_abs(l->var, body);
  }
  if (auto* k = std::get_if<Kont>(&t->node)) {
    StackPtr s2 = subst_tail_stack(k->stack, id, repl);
    if (s2 == k->stack) return t;
    return mk_kont(s2);
  }
  return t;
}

StackPtr subst_tail_stack(const StackPtr& s, const std::string& id, const StackPtr& repl) {
  if (auto* o = std::get_if<OpaqueTail>(&s->node)) return o->name == id ? repl : s;
  if (auto* p = std::get_if<Push>(&s->node)) {
    TermPtr h = subst_tail_term(p->head, id, repl);
    StackPtr r = subst_tail_stack(p->rest, id, repl);
    if (h == p->head && r == p->rest) return s;
    return mk_push(h, r);
  }
  return s;
}

Process subst_tail(const Process& p, const std::string& id, const StackPtr& repl) {
  return {subst_tail_term(p.head, id, repl), subst_tail_stack(p.tail, id, repl)};
}

std::optional<std::string> terminal_opaque_tail(const StackPtr& s) {
  StackPtr cur = s;
  while (auto* p = std::get_if<Push>(&cur->node)) cur = p->rest;
  if (auto* o = std::get_if<OpaqueTail>(&cur->node)) return o->name;
  return std::nullopt;
}

// ---------- Proof search ----------

struct Res {
  enum class S { Ok, Fail, Fuel } s;
  TraceNode node;
  std::string reason;

  static Res ok(TraceNode n) { return {S::Ok, std::move(n), {}}; }
  static Res fail(TraceNode n, std::string why) { return {S::Fail, std::move(n), std::move(why)}; }
  static Res fuel(TraceNode n) { return {S::Fuel, std::move(n), "fuel exhausted"}; }
};

struct State {
  std::map<std::string, FormulaPtr> realizer;  // opaque term -> formula
  std::map<std::string, FormulaPtr> falsity;   // opaque tail -> formula (absent: any stack)
  std::vector<LemmaEntry> ih;                  // rank-induction hypotheses
};

}  // namespace

struct ProofSearch {
  const Engine& eng;
  const ProveConfig& config;
  const std::vector<LemmaEntry>& lemmas;
  Machine machine;
  mutable int fresh_counter = 0;

  const NameUniverse& universe() const;

  std::string fresh(const char* prefix) const {
    return std::string("~") + prefix + std::to_string(++fresh_counter);
  }

  // -- Realizes goals: introduction on the falsity shape of phi --

  Res prove_realizes(const TermPtr& t, const FormulaPtr& phi_in, State st, int depth) const {
    if (depth > config.max_depth)
      return Res::fail({"DEPTH", to_string(phi_in)}, "recursion limit reached");
    FormulaPtr phi = resolve(phi_in);

    if (auto direct = close_realizes(t, phi, st, depth)) return *direct;

    if (std::holds_alternative<FTop>(phi->node))
      return Res::ok({"FALSITY", "||top|| is empty", true});

    if (std::holds_alternative<FBot>(phi->node)) {
      std::string rho = fresh("s");
      st.falsity[rho] = f_bot();
      TraceNode node{"IMP-INTRO", "?" + rho + " falsifies bot"};
      Res r = prove_inpole({t, mk_opaque_tail(rho)}, st, depth + 1);
      node.children.push_back(r.node);
      return {r.s, node, r.reason};
    }

    if (auto* i = std::get_if<FImp>(&phi->node)) {
      std::string u = fresh("t");
      std::string rho = fresh("s");
      st.realizer[u] = i->hyp;
      st.falsity[rho] = i->concl;
      TraceNode node{"IMP-INTRO", u + " realizes " + to_string(i->hyp) + "; ?" + rho +
                                      " falsifies " + to_string(i->concl)};
      Res r = prove_inpole({t, mk_push(mk_opaque(u), mk_opaque_tail(rho))}, st, depth + 1);
      node.children.push_back(r.node);
      return {r.s, node, r.reason};
    }

    if (auto* h = std::get_if<FForallHat>(&phi->node)) {
      TraceNode node{"FORALL-INTRO", "hat bound " + std::to_string(h->bound)};
      Res out = Res::ok(std::move(node));
      for (std::uint64_t b = 0; b < h->bound; ++b) {
        State st2 = st;
        std::string rho = fresh("s");
        st2.falsity[rho] = resolve(subst_name(h->body, h->var, mk_hat(b)));
        TraceNode wrap{"INSTANCE", "beta := " + std::to_string(b)};
        Res r = prove_inpole({t, mk_push(mk_enum(b), mk_opaque_tail(rho))}, st2, depth + 1);
        wrap.children.push_back(r.node);
        wrap.vacuous = subtree_vacuous(r.node);
        out.node.children.push_back(wrap);
        if (r.s != Res::S::Ok) {
          out.s = r.s;
          out.reason = r.reason;
          return out;
        }
      }
      return out;
    }

    if (is_family(phi)) {
      bool truncated = std::holds_alternative<FForallROrd>(phi->node);
      TraceNode node{"FORALL-INTRO", truncated ? "class surrogate truncation" : ""};
      Res out = Res::ok(std::move(node));
      for (const auto& [n, inst] : family_instances(phi, universe())) {
        TraceNode wrap{"INSTANCE", "x := " + n->key};
        Res r = prove_realizes(t, inst, st, depth + 1);
        wrap.children.push_back(r.node);
        wrap.vacuous = subtree_vacuous(r.node);
        out.node.children.push_back(wrap);
        if (r.s != Res::S::Ok) {
          out.s = r.s;
          out.reason = r.reason;
          return out;
        }
      }
      return out;
    }

    // atomic formula: one branch per falsity case
    const auto& at = std::get<FAtom>(phi->node);
    auto [a, b] = atom_names(phi);
    auto cases = falsity_atomic(at.kind, a, b);
    TraceNode node{"FALSITY",
                   atom_kind_str(at.kind) + " with " + std::to_string(cases.size()) + " case(s)"};
    if (cases.empty()) {
      node.detail += "; empty falsity";
      node.vacuous = true;
      return Res::ok(node);
    }
    Res out = Res::ok(std::move(node));
    int case_idx = 0;
    for (const auto& c : cases) {
      Res r = intro_atom_case(t, c, st, depth, case_idx++);
      out.node.children.push_back(r.node);
      if (r.s != Res::S::Ok) {
        out.s = r.s;
        out.reason = r.reason;
        return out;
      }
    }
    return out;
  }

  Res intro_atom_case(const TermPtr& t, const FalsityCase& c, const State& st0, int depth,
                      int case_idx) const {
    State st = st0;
    std::vector<TermPtr> slot_terms;
    std::string detail = "case " + std::to_string(case_idx);
    for (const auto& ob : c.slots) {
      std::string u = fresh("t");
      FormulaPtr slot_phi = f_atom(ob.kind, ne_lit(ob.lhs), ne_lit(ob.rhs));
      st.realizer[u] = slot_phi;
      slot_terms.push_back(mk_opaque(u));
      detail += "; " + u + " realizes " + to_string(slot_phi);
    }
    std::vector<StackPtr> tails = materialize_spec(c.tail);
    TraceNode node{"FALSITY", detail};
    Res out = Res::ok(std::move(node));
    for (const auto& tail : tails) {
      StackPtr stack = tail;
      for (auto it = slot_terms.rbegin(); it != slot_terms.rend(); ++it)
        stack = mk_push(*it, stack);
      Res r = prove_inpole({t, stack}, st, depth + 1);
      out.node.children.push_back(r.node);
      if (r.s != Res::S::Ok) {
        out.s = r.s;
        out.reason = r.reason;
        return out;
      }
    }
    if (tails.empty()) {
      out.node.detail += "; empty stack set";
      out.node.vacuous = true;
    }
    return out;
  }

  std::vector<StackPtr> materialize_spec(const StackSpec& spec) const {
    std::vector<StackPtr> tails;
    if (auto* fin = std::get_if<FiniteStacks>(&spec)) {
      for (const auto& s : fin->stacks) tails.push_back(s);
    } else if (auto* pre = std::get_if<PrefixAll>(&spec)) {
      StackPtr tail = mk_opaque_tail(fresh("s"));
      for (auto it = pre->prefix.rbegin(); it != pre->prefix.rend(); ++it)
        tail = mk_push(*it, tail);
      tails.push_back(tail);
    } else {
      tails.push_back(mk_opaque_tail(fresh("s")));
    }
    return tails;
  }

  std::optional<Res> close_realizes(const TermPtr& t, const FormulaPtr& phi, const State& st,
                                    int depth) const {
    for (const auto& lem : lemmas)
      if (alpha_eq(t, lem.term) && falsity_subset(phi, lem.phi, universe()))
        return Res::ok({"LEMMA", lem.id});
    for (const auto& lem : st.ih)
      if (alpha_eq(t, lem.term) && falsity_subset(phi, lem.phi, universe()))
        return Res::ok({"LEMMA", lem.id});
    if (auto* o = std::get_if<OpaqueTerm>(&t->node)) {
      auto it = st.realizer.find(o->name);
      if (it != st.realizer.end() && falsity_subset(phi, resolve(it->second), universe()))
        return Res::ok({"HYP-MATCH", o->name});
    }
    if (auto* k = std::get_if<Kont>(&t->node)) {
      if (auto* i = std::get_if<FImp>(&phi->node)) {
        // k[sigma] realizes a -> b whenever sigma falsifies a
        Res r = prove_infalsity(k->stack, resolve(i->hyp), st, depth + 1);
        if (r.s == Res::S::Ok) {
          TraceNode node{"KPI", "continuation against " + to_string(i->hyp)};
          node.children.push_back(r.node);
          return Res::ok(node);
        }
      }
    }
    return std::nullopt;
  }

  // -- InPole goals: evaluate, close, or refine the blocking hypothesis --

  Res prove_inpole(const Process& p, State st, int depth) const {
    if (depth > config.max_depth)
      return Res::fail({"DEPTH", to_string(p)}, "recursion limit reached");

    // a hypothesis with empty falsity value cannot be instantiated
    for (const auto& [id, phi] : st.falsity) {
      if (phi && falsity_empty(resolve(phi), universe()))
        return Res::ok({"VACUOUS", "?" + id + " : " + to_string(phi) + " has empty falsity",
                        true});
    }

    Machine::Trace tr = machine.reduce(p, config.fuel);
    TraceNode anti{"ANTI-EVAL",
                   std::to_string(tr.steps.size() - 1) + " step(s) to " + to_string(tr.last())};
    if (tr.status == Machine::Trace::Status::OutOfFuel) return Res::fuel(anti);
    const Process& last = tr.last();

    std::string close_reason;
    if (auto* o = std::get_if<OpaqueTerm>(&last.head->node)) {
      auto it = st.realizer.find(o->name);
      if (it != st.realizer.end()) {
        Res r = prove_infalsity(last.tail, resolve(it->second), st, depth + 1);
        if (r.s == Res::S::Ok) {
          TraceNode match{"HYP-MATCH", o->name + " realizes " + to_string(it->second)};
          match.children.push_back(r.node);
          anti.children.push_back(match);
          return Res::ok(anti);
        }
        close_reason = r.reason;
      } else {
        close_reason = "no hypothesis for opaque head " + o->name;
      }
    }

    if (auto rho = terminal_opaque_tail(last.tail)) {
      auto it = st.falsity.find(*rho);
      if (it != st.falsity.end() && it->second) {
        Res r = decompose_falsity_hyp(last, *rho, resolve(it->second), st, depth);
        anti.children.push_back(r.node);
        return {r.s, anti, r.reason};
      }
    }

    std::string why = close_reason.empty()
                          ? "stuck at " + to_string(last) + " with no applicable rule"
                          : "stuck at " + to_string(last) + ": " + close_reason;
    return Res::fail(anti, why);
  }

  Res decompose_falsity_hyp(const Process& last, const std::string& rho, const FormulaPtr& chi,
                            State st, int depth) const {
    if (auto* i = std::get_if<FImp>(&chi->node)) {
      std::string u = fresh("t");
      std::string rho2 = fresh("s");
      State st2 = st;
      st2.falsity.erase(rho);
      st2.realizer[u] = i->hyp;
      st2.falsity[rho2] = i->concl;
      StackPtr repl = mk_push(mk_opaque(u), mk_opaque_tail(rho2));
      TraceNode node{"FALSITY",
                     "?" + rho + " := " + u + ".?" + rho2 + " from " + to_string(chi)};
      Res r = prove_inpole(subst_tail(last, rho, repl), st2, depth + 1);
      node.children.push_back(r.node);
      return {r.s, node, r.reason};
    }

    if (auto* h = std::get_if<FForallHat>(&chi->node)) {
      TraceNode node{"CASE-SPLIT", "?" + rho + " over hat bound " + std::to_string(h->bound)};
      Res out = Res::ok(std::move(node));
      for (std::uint64_t b = 0; b < h->bound; ++b) {
        State st2 = st;
        std::string rho2 = fresh("s");
        st2.falsity.erase(rho);
        st2.falsity[rho2] = resolve(subst_name(h->body, h->var, mk_hat(b)));
        StackPtr repl = mk_push(mk_enum(b), mk_opaque_tail(rho2));
        TraceNode wrap{"INSTANCE", "beta := " + std::to_string(b)};
        Res r = prove_inpole(subst_tail(last, rho, repl), st2, depth + 1);
        wrap.children.push_back(r.node);
        wrap.vacuous = subtree_vacuous(r.node);
        out.node.children.push_back(wrap);
        if (r.s != Res::S::Ok) {
          out.s = r.s;
          out.reason = r.reason;
          return out;
        }
      }
      return out;
    }

    if (is_family(chi)) {
      TraceNode node{"CASE-SPLIT", "?" + rho + " over " + to_string(chi)};
      Res out = Res::ok(std::move(node));
      for (const auto& [n, inst] : family_instances(chi, universe())) {
        State st2 = st;
        st2.falsity[rho] = inst;
        TraceNode wrap{"INSTANCE", "x := " + n->key};
        Res r = prove_inpole(last, st2, depth + 1);
        wrap.children.push_back(r.node);
        wrap.vacuous = subtree_vacuous(r.node);
        out.node.children.push_back(wrap);
        if (r.s != Res::S::Ok) {
          out.s = r.s;
          out.reason = r.reason;
          return out;
        }
      }
      return out;
    }

    if (std::holds_alternative<FAtom>(chi->node)) {
      const auto& at = std::get<FAtom>(chi->node);
      auto [a, b] = atom_names(chi);
      auto cases = falsity_atomic(at.kind, a, b);
      if (cases.empty())
        return Res::ok(
            {"VACUOUS", "?" + rho + " : " + to_string(chi) + " has empty falsity", true});
      TraceNode node{"CASE-SPLIT", "?" + rho + " over " + to_string(chi) + " (" +
                                       std::to_string(cases.size()) + " case(s))"};
      Res out = Res::ok(std::move(node));
      int idx = 0;
      for (const auto& c : cases) {
        Res r = refine_atom_case(last, rho, c, st, depth, idx++);
        out.node.children.push_back(r.node);
        if (r.s != Res::S::Ok) {
          out.s = r.s;
          out.reason = r.reason;
          return out;
        }
      }
      return out;
    }

    // bot: membership gives no information; drop the hypothesis
    State st2 = st;
    st2.falsity.erase(rho);
    TraceNode node{"FALSITY", "?" + rho + " : bot gives no refinement"};
    Res r = prove_inpole(last, st2, depth + 1);
    node.children.push_back(r.node);
    return {r.s, node, r.reason};
  }

  Res refine_atom_case(const Process& last, const std::string& rho, const FalsityCase& c,
                       const State& st0, int depth, int idx) const {
    State st = st0;
    st.falsity.erase(rho);
    std::vector<TermPtr> slot_terms;
    std::string detail = "case " + std::to_string(idx);
    for (const auto& ob : c.slots) {
      std::string u = fresh("t");
      st.realizer[u] = f_atom(ob.kind, ne_lit(ob.lhs), ne_lit(ob.rhs));
      slot_terms.push_back(mk_opaque(u));
      detail += "; " + u + " realizes " + to_string(st.realizer[u]);
    }
    std::vector<StackPtr> tails = materialize_spec(c.tail);
    TraceNode node{"FALSITY", detail};
    Res out = Res::ok(std::move(node));
    bool refines = !c.slots.empty() || !std::holds_alternative<AllStacks>(c.tail);
    for (const auto& tail : tails) {
      StackPtr repl = tail;
      for (auto it = slot_terms.rbegin(); it != slot_terms.rend(); ++it)
        repl = mk_push(*it, repl);
      Process next = refines ? subst_tail(last, rho, repl) : last;
      Res r = prove_inpole(next, st, depth + 1);
      out.node.children.push_back(r.node);
      if (r.s != Res::S::Ok) {
        out.s = r.s;
        out.reason = r.reason;
        return out;
      }
    }
    return out;
  }

  // -- InFalsity goals: match a concrete stack against ||phi|| --

  Res prove_infalsity(const StackPtr& stack, const FormulaPtr& phi, const State& st,
                      int depth) const {
    if (depth > config.max_depth)
      return Res::fail({"DEPTH", to_string(phi)}, "recursion limit reached");

    if (auto* o = std::get_if<OpaqueTail>(&stack->node)) {
      auto it = st.falsity.find(o->name);
      if (it != st.falsity.end() && it->second &&
          falsity_subset(resolve(it->second), phi, universe()))
        return Res::ok({"HYP-MATCH", "?" + o->name + " : " + to_string(it->second)});
      if (falsity_full(phi, universe()))
        return Res::ok({"FALSITY", "||" + to_string(phi) + "|| is all stacks"});
    }

    if (std::holds_alternative<FBot>(phi->node))
      return Res::ok({"FALSITY", "||bot|| contains every stack"});
    if (std::holds_alternative<FTop>(phi->node))
      return Res::fail({"FALSITY", "||top|| is empty"}, "||top|| has no members");

    if (auto* i = std::get_if<FImp>(&phi->node)) {
      if (auto* push = std::get_if<Push>(&stack->node)) {
        Res slot = slot_realizes(push->head, resolve(i->hyp), st, depth + 1);
        if (slot.s != Res::S::Ok) return Res::fail(slot.node, slot.reason);
        Res rest = prove_infalsity(push->rest, resolve(i->concl), st, depth + 1);
        TraceNode node{"FALSITY", "implication split"};
        node.children.push_back(slot.node);
        node.children.push_back(rest.node);
        return {rest.s, node, rest.reason};
      }
      return Res::fail({"FALSITY", "implication needs a pushed realizer"},
                       "stack " + to_string(stack) + " does not start with a push for " +
                           to_string(phi));
    }

    if (auto* h = std::get_if<FForallHat>(&phi->node)) {
      if (auto* push = std::get_if<Push>(&stack->node)) {
        if (auto* e = std::get_if<EnumLit>(&push->head->node)) {
          if (e->index < h->bound) {
            FormulaPtr inst = resolve(subst_name(h->body, h->var, mk_hat(e->index)));
            Res r = prove_infalsity(push->rest, inst, st, depth + 1);
            TraceNode node{"FALSITY", "hat instance beta := " + std::to_string(e->index)};
            node.children.push_back(r.node);
            return {r.s, node, r.reason};
          }
        }
      }
      return Res::fail({"FALSITY", "hat family needs a nu-literal head"},
                       "stack " + to_string(stack) + " does not select a hat instance of " +
                           to_string(phi));
    }

    if (is_family(phi)) {
      for (const auto& [n, inst] : family_instances(phi, universe())) {
        Res r = prove_infalsity(stack, inst, st, depth + 1);
        if (r.s == Res::S::Ok) {
          TraceNode node{"FALSITY", "instance x := " + n->key};
          node.children.push_back(r.node);
          return Res::ok(node);
        }
      }
      return Res::fail({"FALSITY", "no usable instance"},
                       "no instance of " + to_string(phi) + " admits " + to_string(stack));
    }

    if (std::holds_alternative<FAtom>(phi->node)) {
      const auto& at = std::get<FAtom>(phi->node);
      auto [a, b] = atom_names(phi);
      auto cases = falsity_atomic(at.kind, a, b);
      for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        Res r = match_atom_case(stack, cases[ci], st, depth);
        if (r.s == Res::S::Ok) {
          TraceNode node{"FALSITY", atom_kind_str(at.kind) + " case " + std::to_string(ci)};
          node.children.push_back(r.node);
          return Res::ok(node);
        }
      }
      return Res::fail({"FALSITY", "no case matches"},
                       "stack " + to_string(stack) + " not in ||" + to_string(phi) + "||");
    }

    return Res::fail({"FALSITY", "unhandled"}, "cannot match " + to_string(phi));
  }

  Res match_atom_case(const StackPtr& stack, const FalsityCase& c, const State& st,
                      int depth) const {
    StackPtr cur = stack;
    TraceNode node{"FALSITY", "atom case"};
    for (const auto& ob : c.slots) {
      auto* push = std::get_if<Push>(&cur->node);
      if (!push) return Res::fail(node, "missing realizer slot in " + to_string(stack));
      FormulaPtr slot_phi = f_atom(ob.kind, ne_lit(ob.lhs), ne_lit(ob.rhs));
      Res slot = slot_realizes(push->head, slot_phi, st, depth + 1);
      if (slot.s != Res::S::Ok) return Res::fail(slot.node, slot.reason);
      node.children.push_back(slot.node);
      cur = push->rest;
    }
    if (!spec_matches(c.tail, cur))
      return Res::fail(node,
                       "stack tail " + to_string(cur) + " outside " + spec_to_string(c.tail));
    return Res::ok(node);
  }

  // A term standing in a realizer slot of a falsity value. Only closing
  // rules apply: hypotheses, continuations, lemmas, vacuity.
  Res slot_realizes(const TermPtr& t, const FormulaPtr& phi, const State& st, int depth) const {
    if (depth > config.max_depth)
      return Res::fail({"DEPTH", to_string(phi)}, "recursion limit reached");
    if (falsity_empty(phi, universe()))
      return Res::ok({"FALSITY", to_string(phi) + " is vacuously realized", true});
    if (auto* o = std::get_if<OpaqueTerm>(&t->node)) {
      auto it = st.realizer.find(o->name);
      if (it != st.realizer.end() && falsity_subset(phi, resolve(it->second), universe()))
        return Res::ok({"HYP-MATCH", o->name + " : " + to_string(it->second)});
    }
    if (auto* k = std::get_if<Kont>(&t->node)) {
      if (auto* i = std::get_if<FImp>(&phi->node)) {
        Res r = prove_infalsity(k->stack, resolve(i->hyp), st, depth + 1);
        if (r.s == Res::S::Ok) {
          TraceNode node{"KPI", "k[" + to_string(k->stack) + "] realizes " + to_string(phi)};
          node.children.push_back(r.node);
          return Res::ok(node);
        }
      }
    }
    for (const auto& lem : lemmas)
      if (alpha_eq(t, lem.term) && falsity_subset(phi, lem.phi, universe()))
        return Res::ok({"LEMMA", lem.id});
    for (const auto& lem : st.ih)
      if (alpha_eq(t, lem.term) && falsity_subset(phi, lem.phi, universe()))
        return Res::ok({"LEMMA", lem.id});
    return Res::fail({"SLOT", to_string(t)},
                     "slot term " + to_string(t) + " is not known to realize " + to_string(phi));
  }
};

const NameUniverse& ProofSearch::universe() const { return eng.universe(); }

// ---------- Engine ----------

Engine::Engine(NameUniverse universe, ProveConfig config)
    : universe_(std::move(universe)), config_(config) {
  if (!universe_.dom_closed())
    throw std::runtime_error("verifier: universe is not dom-closed");
}

void Engine::set_lemmas(std::vector<LemmaEntry> lemmas) { lemmas_ = std::move(lemmas); }

namespace {

Res rank_induction(const ProofSearch& search, const TermPtr& term, const FForall& q,
                   const State& st0, const NameUniverse& universe, bool with_ih) {
  TraceNode node{"RANK-IND", with_ih ? "" : "induction hypotheses disabled"};
  Res out = Res::ok(std::move(node));
  std::vector<std::pair<std::uint32_t, LemmaEntry>> established;
  for (const auto& n : universe.sorted()) {
    State st = st0;
    if (with_ih) {
      for (const auto& [rk, lem] : established)
        if (rk < n->rank) st.ih.push_back(lem);
    }
    FormulaPtr inst = resolve(subst_name(q.body, q.var, n));
    TraceNode wrap{"INSTANCE", "x := " + n->key};
    Res r = search.prove_realizes(term, inst, st, 1);
    wrap.children.push_back(r.node);
    wrap.vacuous = subtree_vacuous(r.node);
    out.node.children.push_back(wrap);
    if (r.s != Res::S::Ok) {
      out.s = r.s;
      out.reason = r.reason;
      return out;
    }
    established.emplace_back(n->rank, LemmaEntry{"IH " + n->key, term, inst});
  }
  return out;
}

}  // namespace

ProofResult Engine::prove(const Goal& goal) const {
  ProofSearch search{*this, config_, lemmas_, Machine{}, 0};
  State st;
  for (const auto& h : goal.realizer_hyps) st.realizer[h.id] = h.phi;
  for (const auto& h : goal.falsity_hyps) st.falsity[h.id] = h.phi;

  Res r{Res::S::Fail, {}, "no claim"};
  if (auto* g = std::get_if<GoalRealizes>(&goal.claim)) {
    FormulaPtr phi = resolve(g->phi);
    auto* q = std::get_if<FForall>(&phi->node);
    if (goal.rank_induction && q) {
      r = rank_induction(search, g->term, *q, st, universe_, config_.rank_induction);
    } else {
      r = search.prove_realizes(g->term, phi, st, 0);
    }
  } else if (auto* ip = std::get_if<GoalInPole>(&goal.claim)) {
    r = search.prove_inpole(ip->proc, st, 0);
  } else {
    const auto& inf = std::get<GoalInFalsity>(goal.claim);
    r = search.prove_infalsity(inf.stack, resolve(inf.phi), st, 0);
  }

  ProofResult out;
  out.trace = r.node;
  out.reject_reason = r.reason;
  out.outcome = r.s == Res::S::Ok     ? Outcome::Accepted
                : r.s == Res::S::Fuel ? Outcome::FuelOut
                                      : Outcome::Rejected;
  return out;
}

bool Engine::replay(const Goal& goal, const ProofResult& recorded) const {
  ProofResult again = prove(goal);
  if (again.outcome != recorded.outcome) return false;
  return again.trace.render() == recorded.trace.render();
}

}  // namespace rlz
