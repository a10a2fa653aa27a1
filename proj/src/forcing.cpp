#include "rlz/forcing.hpp"

#include <map>
#include <stdexcept>

namespace rlz {

namespace {

struct Forcing {
  const NameUniverse& universe;
  const TauContext& ctx;
  // memo for the notin/sub recursion, keyed by atom kind and operand keys
  std::map<std::string, Elem> memo;

  Elem of(const FormulaPtr& phi) {
    const BoolAlg& B = ctx.alg;
    if (std::holds_alternative<FTop>(phi->node)) return B.zero;
    if (std::holds_alternative<FBot>(phi->node)) return B.one;
    if (auto* a = std::get_if<FAtom>(&phi->node)) {
      auto* l = std::get_if<NLit>(&a->lhs->node);
      auto* r = std::get_if<NLit>(&a->rhs->node);
      if (!l || !r)
        throw std::runtime_error("forcing_value: unresolved atom " + to_string(phi));
      return atom(a->kind, l->value, r->value);
    }
    if (auto* i = std::get_if<FImp>(&phi->node))
      return B.meet(B.neg(of(i->hyp)), of(i->concl));
    if (auto* q = std::get_if<FForall>(&phi->node)) {
      Elem v = B.zero;
      for (const auto& n : universe.sorted())
        v = B.join(v, of(resolve(subst_name(q->body, q->var, n))));
      return v;
    }
    if (auto* g = std::get_if<FForallGimel>(&phi->node)) {
      Elem v = B.zero;
      for (const auto& n : g->range)
        v = B.join(v, of(resolve(subst_name(g->body, g->var, n))));
      return v;
    }
    if (std::holds_alternative<FForallHat>(phi->node))
      throw std::runtime_error("forcing_value: hat quantifier has no Boolean value: " +
                               to_string(phi));
    const auto& r = std::get<FForallROrd>(phi->node);
    Elem v = B.zero;
    for (std::uint64_t a2 = 0; a2 < r.bound; ++a2)
      v = B.join(v, of(resolve(subst_name(r.body, r.var, mk_reish(a2)))));
    return v;
  }

  Elem atom(AtomKind kind, const NamePtr& a, const NamePtr& b) {
    const BoolAlg& B = ctx.alg;
    switch (kind) {
      case AtomKind::Neq:
        return name_eq(a, b) ? B.one : B.zero;
      case AtomKind::NotEps: {
        Elem v = B.zero;
        for (const auto& e : b->entries)
          if (name_eq(e.child, a)) v = B.join(v, tau_sup(e.spec, ctx));
        return v;
      }
      case AtomKind::NotIn: {
        std::string key = "!in|" + a->key + "|" + b->key;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Elem v = B.zero;
        for (const auto& e : b->entries) {
          Elem branch = B.meet(B.neg(atom(AtomKind::Sub, a, e.child)),
                               B.meet(B.neg(atom(AtomKind::Sub, e.child, a)),
                                      tau_sup(e.spec, ctx)));
          v = B.join(v, branch);
        }
        memo[key] = v;
        return v;
      }
      case AtomKind::Sub: {
        std::string key = "sub|" + a->key + "|" + b->key;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Elem v = B.zero;
        for (const auto& e : a->entries)
          v = B.join(v, B.meet(B.neg(atom(AtomKind::NotIn, e.child, b)), tau_sup(e.spec, ctx)));
        memo[key] = v;
        return v;
      }
    }
    throw std::logic_error("forcing: bad atom");
  }
};

}  // namespace

Elem forcing_value(const FormulaPtr& phi, const NameUniverse& universe, const TauContext& ctx) {
  if (!formula_closed(phi))
    throw std::runtime_error("forcing_value: formula not closed: " + to_string(phi));
  if (mentions_hat(phi))
    throw std::runtime_error("forcing_value: hat machinery has no Boolean value: " +
                             to_string(phi));
  FormulaPtr r = resolve(phi);
  for (const auto& n : formula_names(r))
    if (!universe.contains(n))
      throw std::runtime_error("forcing_value: name outside universe: " + n->key);
  Forcing f{universe, ctx, {}};
  return f.of(r);
}

}  // namespace rlz
