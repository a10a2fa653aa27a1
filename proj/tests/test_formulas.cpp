#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rlz/bool_alg.hpp"
#include "rlz/forcing.hpp"
#include "rlz/formula.hpp"

using namespace rlz;

namespace {

NameExprPtr lit(std::uint64_t n) { return ne_lit(mk_reish(n)); }

}  // namespace

TEST_CASE("desugaring follows the abbreviation table") {
  // a eps b  ==  a !eps b -> bot
  CHECK(formula_eq(parse_formula("reish 0 eps reish 1"),
                   f_imp(f_atom(AtomKind::NotEps, lit(0), lit(1)), f_bot())));
  // a in b
  CHECK(formula_eq(parse_formula("reish 0 in reish 1"),
                   f_imp(f_atom(AtomKind::NotIn, lit(0), lit(1)), f_bot())));
  // a = b
  CHECK(formula_eq(parse_formula("reish 0 = reish 1"),
                   f_imp(f_atom(AtomKind::Neq, lit(0), lit(1)), f_bot())));
  // a ~= b  ==  (a sub b -> (b sub a -> bot)) -> bot
  CHECK(formula_eq(parse_formula("reish 0 ~= reish 1"),
                   f_imp(f_imp(f_atom(AtomKind::Sub, lit(0), lit(1)),
                               f_imp(f_atom(AtomKind::Sub, lit(1), lit(0)), f_bot())),
                         f_bot())));
  // p /\ q  ==  (p -> (q -> bot)) -> bot
  CHECK(formula_eq(parse_formula("top /\\ bot"),
                   f_imp(f_imp(f_top(), f_imp(f_bot(), f_bot())), f_bot())));
  // p \/ q  ==  (p -> bot) -> ((q -> bot) -> bot)
  CHECK(formula_eq(parse_formula("top \\/ bot"),
                   f_imp(f_imp(f_top(), f_bot()), f_imp(f_imp(f_bot(), f_bot()), f_bot()))));
  // ex x. p  ==  (all x. (p -> bot)) -> bot
  CHECK(formula_eq(parse_formula("ex x. x !eps reish 1"),
                   f_imp(f_forall("x", f_imp(f_atom(AtomKind::NotEps, ne_var("x"), lit(1)),
                                             f_bot())),
                         f_bot())));
  // all x eps a. p  ==  all x. (x eps a -> p)
  CHECK(formula_eq(
      parse_formula("all x eps reish 2. x !eps reish 1"),
      f_forall("x", f_imp(f_imp(f_atom(AtomKind::NotEps, ne_var("x"), lit(2)), f_bot()),
                          f_atom(AtomKind::NotEps, ne_var("x"), lit(1))))));
  // ex x eps a. p  ==  (all x. (p -> x !eps a)) -> bot
  CHECK(formula_eq(
      parse_formula("ex x eps reish 2. x !eps reish 1"),
      f_imp(f_forall("x", f_imp(f_atom(AtomKind::NotEps, ne_var("x"), lit(1)),
                                f_atom(AtomKind::NotEps, ne_var("x"), lit(2)))),
            f_bot())));
  // a sub_eps b  ==  all z. (z eps a -> z eps b)
  CHECK(formula_eq(
      parse_formula("reish 1 sub_eps reish 2"),
      f_forall("z", f_imp(f_imp(f_atom(AtomKind::NotEps, ne_var("z"), lit(1)), f_bot()),
                          f_imp(f_atom(AtomKind::NotEps, ne_var("z"), lit(2)), f_bot())))));
}

TEST_CASE("desugar is idempotent on primitive formulas") {
  SugaredPtr prim = s_conn(SKind::Imp, s_atom(SKind::NotEps, lit(0), lit(1)),
                           s_quant(SKind::Forall, "x",
                                   s_atom(SKind::Sub, ne_var("x"), lit(2))));
  FormulaPtr once = desugar(prim);
  // rebuild the sugared tree from the primitive formula and desugar again
  SugaredPtr again = s_conn(SKind::Imp, s_atom(SKind::NotEps, lit(0), lit(1)),
                            s_quant(SKind::Forall, "x",
                                    s_atom(SKind::Sub, ne_var("x"), lit(2))));
  CHECK(formula_eq(once, desugar(again)));
  CHECK(formula_eq(parse_formula(to_string(once)), once));
}

TEST_CASE("formula printing round trips") {
  for (const char* text : {
           "top",
           "bot",
           "reish 0 !eps reish 1",
           "reish 2 != gimel{reish 0}",
           "reish 0 !in reish 1 -> (top -> bot)",
           "all x. x sub reish 2",
           "all x^gimel{reish 0, reish 1}. x !eps reish 2",
           "all x^hat(3). all y. (y !eps hat 3 -> y !eps x)",
           "all x^rord(4). ((all y^rord(5). x !eps y) -> bot)",
       }) {
    FormulaPtr f = parse_formula(text);
    CHECK(formula_eq(parse_formula(to_string(f)), f));
  }
}

TEST_CASE("substitution of names for variables") {
  FormulaPtr f = parse_formula("x !eps reish 1");
  CHECK(formula_eq(subst_name(f, "x", mk_reish(0)), parse_formula("reish 0 !eps reish 1")));
  // shadowed occurrences stay put
  FormulaPtr shadow = parse_formula("all x. x sub x");
  CHECK(formula_eq(subst_name(shadow, "x", mk_reish(2)), shadow));
  FormulaPtr imp = parse_formula("x sub x -> bot");
  CHECK(formula_eq(subst_name(imp, "x", mk_reish(2)),
                   parse_formula("reish 2 sub reish 2 -> bot")));
}

TEST_CASE("resolution evaluates op pairs and successor lifts") {
  FormulaPtr f = parse_formula("op (reish 0) (reish 1) !eps reish 2");
  FormulaPtr r = resolve(f);
  auto* atom = std::get_if<FAtom>(&r->node);
  REQUIRE(atom);
  auto* l = std::get_if<NLit>(&atom->lhs->node);
  REQUIRE(l);
  CHECK(name_eq(l->value, op(mk_reish(0), mk_reish(1))));

  // in-domain reish successor
  FormulaPtr s = resolve(parse_formula("reish 1 != rsucc(5) (reish 1)"));
  CHECK(formula_eq(s, parse_formula("reish 1 != reish 2")));
  // out-of-domain reish lift: the atom's falsity is every stack
  CHECK(formula_eq(resolve(parse_formula("reish 1 != rsucc(1) (reish 3)")), f_bot()));
  // in-domain hat successor
  CHECK(formula_eq(resolve(parse_formula("hat 2 !eps hsucc(3) (hat 1)")),
                   parse_formula("hat 2 !eps hat 2")));
  // out-of-domain hat lift: empty falsity
  CHECK(formula_eq(resolve(parse_formula("hat 2 !eps hsucc(3) (reish 1)")), f_top()));
  // under a quantifier the application waits for its argument
  FormulaPtr q = parse_formula("all y^rord(3). reish 1 != rsucc(3) y");
  CHECK(!is_resolved(q));
  CHECK(is_resolved(resolve(subst_name(std::get<FForallROrd>(q->node).body,
                                       std::get<FForallROrd>(q->node).var, mk_reish(0)))));
}

TEST_CASE("formula equality ignores bound variable names") {
  CHECK(formula_eq(parse_formula("all x. x sub x"), parse_formula("all y. y sub y")));
  CHECK(!formula_eq(parse_formula("all x. all y. x sub y"),
                    parse_formula("all x. all y. y sub x")));
}

TEST_CASE("falsity shapes") {
  NameUniverse u;
  u.add_closed(mk_reish(2));

  CHECK(std::holds_alternative<ShapeEmpty>(falsity_shape(f_top(), &u)));
  CHECK(std::holds_alternative<ShapeFull>(falsity_shape(f_bot(), &u)));

  auto imp = falsity_shape(parse_formula("top -> bot"), &u);
  auto* si = std::get_if<ShapeImp>(&imp);
  REQUIRE(si);
  CHECK(formula_eq(si->hyp, f_top()));
  CHECK(formula_eq(si->tail, f_bot()));

  // hat families prepend the enumeration literal
  auto hat = falsity_shape(parse_formula("all x^hat(2). x !eps hat 2"), &u);
  auto* sh = std::get_if<ShapeFamily>(&hat);
  REQUIRE(sh);
  REQUIRE(sh->instances.size() == 2);
  CHECK(sh->instances[0].nu_index == 0);
  CHECK(sh->instances[1].nu_index == 1);
  CHECK(formula_eq(sh->instances[1].inst, parse_formula("hat 1 !eps hat 2")));

  // a gimel family is exactly the union of its member instances
  auto gim = falsity_shape(parse_formula("all x^gimel{reish 0}. x !eps reish 1"), &u);
  auto* sg = std::get_if<ShapeFamily>(&gim);
  REQUIRE(sg);
  REQUIRE(sg->instances.size() == 1);
  CHECK(!sg->instances[0].nu_index);
  CHECK(formula_eq(sg->instances[0].inst, parse_formula("reish 0 !eps reish 1")));

  // unbounded quantifiers need a declared universe
  CHECK_THROWS(falsity_shape(parse_formula("all x. x sub x"), nullptr));
  auto unb = falsity_shape(parse_formula("all x. x sub x"), &u);
  CHECK(std::get<ShapeFamily>(unb).instances.size() == u.members.size());

  // atoms delegate to the names module
  auto at = falsity_shape(parse_formula("reish 0 !in reish 1"), &u);
  auto* sa = std::get_if<ShapeAtom>(&at);
  REQUIRE(sa);
  REQUIRE(sa->cases.size() == 1);
  REQUIRE(sa->cases[0].slots.size() == 2);
  CHECK(formula_eq(sa->cases[0].slots[0], parse_formula("reish 0 sub reish 0")));
}

TEST_CASE("schemas desugar exactly as displayed") {
  FormulaPtr surj = desugar(schema::eps_surj(ne_var("f"), ne_var("a"), ne_var("b")));
  FormulaPtr displayed = parse_formula(
      "all y. (y eps b -> (all x. (op x y eps f -> x !eps a)) -> bot)");
  CHECK(formula_eq(surj, displayed));

  FormulaPtr fun = desugar(schema::eps_fun(ne_var("f")));
  CHECK(formula_eq(fun, parse_formula("all x. all y. all y'. (op x y eps f -> (op x y' eps f "
                                      "-> (y != y' -> bot)))")));

  FormulaPtr ext = desugar(schema::ext_fun(ne_var("f"), {mk_reish(0), mk_reish(1)}));
  CHECK(formula_eq(
      ext, parse_formula(
               "all x1^gimel{reish 0, reish 1}. all x2^gimel{reish 0, reish 1}. all y1. all y2. "
               "(x1 ~= x2 -> (op x1 y1 eps f -> (op x2 y2 eps f -> ((y1 ~= y2 -> bot) -> "
               "bot))))")));

  // the choice schema is closed and mentions both a selection function and
  // inclusion in the relation
  FormulaPtr neac = desugar(schema::neac());
  CHECK(formula_closed(neac));
  CHECK(formula_eq(neac, parse_formula("neac")));
}

TEST_CASE("mentions_hat and name collection") {
  CHECK(mentions_hat(parse_formula("all x^hat(2). top")));
  CHECK(mentions_hat(parse_formula("hat 1 !eps hat 2")));
  CHECK(mentions_hat(parse_formula("reish 0 !eps hsucc(2) (hat 0)")));
  CHECK(!mentions_hat(parse_formula("all x^rord(3). x sub reish 2")));
  CHECK(!mentions_hat(parse_formula("up (reish 0) (reish 1) != reish 2")));

  auto names = formula_names(parse_formula("all x^gimel{reish 1}. x !eps reish 2"));
  bool saw1 = false, saw2 = false;
  for (const auto& n : names) {
    saw1 = saw1 || name_eq(n, mk_reish(1));
    saw2 = saw2 || name_eq(n, mk_reish(2));
  }
  CHECK(saw1);
  CHECK(saw2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS(parse_formula("all x x sub x"));
  CHECK_THROWS(parse_formula("reish 0 !eps"));
  CHECK_THROWS(parse_formula("gimel{x} != reish 0"));  // gimel members must be closed
  CHECK_THROWS(parse_formula("top top"));
}

// The forcing value computed one falsity-shape level at a time must agree
// with the direct evaluator.
namespace {

Elem shape_forcing(const FormulaPtr& f, const NameUniverse& u, const TauContext& ctx);

Elem shape_truth_sup(const FormulaPtr& f, const NameUniverse& u, const TauContext& ctx) {
  // sup of tau over the realizers of f is the complement of the falsity sup
  return ctx.alg.neg(shape_forcing(f, u, ctx));
}

Elem shape_forcing(const FormulaPtr& f, const NameUniverse& u, const TauContext& ctx) {
  const BoolAlg& B = ctx.alg;
  FalsityShape shape = falsity_shape(resolve(f), &u);
  if (std::holds_alternative<ShapeEmpty>(shape)) return B.zero;
  if (std::holds_alternative<ShapeFull>(shape)) return B.one;
  if (auto* i = std::get_if<ShapeImp>(&shape))
    return B.meet(shape_truth_sup(i->hyp, u, ctx), shape_forcing(i->tail, u, ctx));
  if (auto* fam = std::get_if<ShapeFamily>(&shape)) {
    Elem v = B.zero;
    for (const auto& inst : fam->instances) {
      if (inst.nu_index)
        throw std::runtime_error("no Boolean value for hat families");
      v = B.join(v, shape_forcing(inst.inst, u, ctx));
    }
    return v;
  }
  const auto& atom = std::get<ShapeAtom>(shape);
  Elem v = B.zero;
  for (const auto& c : atom.cases) {
    Elem branch = tau_sup(c.tail, ctx);
    for (const auto& slot : c.slots) branch = B.meet(branch, shape_truth_sup(slot, u, ctx));
    v = B.join(v, branch);
  }
  return v;
}

}  // namespace

TEST_CASE("structural recursion through falsity shapes agrees with forcing_value") {
  TauContext ctx = TauContext::standard(BoolAlg::powerset(2));
  NameUniverse u;
  u.add_closed(mk_reish(2));
  u.add_closed(up(mk_reish(0), mk_reish(1)));

  std::vector<std::string> formulas = {
      "top",
      "bot",
      "reish 0 !eps reish 1",
      "reish 1 !eps reish 1",
      "reish 0 != reish 1",
      "reish 1 != reish 1",
      "reish 0 sub reish 1",
      "reish 1 sub reish 0",
      "reish 0 !in reish 2",
      "reish 2 !in up (reish 0) (reish 1)",
      "reish 0 !eps reish 1 -> bot",
      "(reish 0 !eps reish 1 -> bot) -> reish 1 sub reish 0",
      "all x. x sub x",
      "all x. (x !eps reish 2 -> x !eps reish 1)",
      "all x^gimel{reish 0, reish 1}. x !eps reish 2",
      "all x^rord(3). x sub reish 2",
      "reish 0 eps up (reish 0) (reish 1)",
  };
  for (const auto& text : formulas) {
    FormulaPtr f = parse_formula(text);
    CHECK_MESSAGE(shape_forcing(f, u, ctx) == forcing_value(f, u, ctx), text);
  }
}
