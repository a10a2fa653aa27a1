#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rlz/combinators.hpp"
#include "rlz/parser.hpp"
#include "rlz/term.hpp"
#include "test_util.hpp"

using namespace rlz;

TEST_CASE("application groups left, abstraction body extends right") {
  TermPtr t = parse_term("\\u.\\v. v u");
  CHECK(alpha_eq(t, mk_abs("u", mk_abs("v", mk_app(mk_var("v"), mk_var("u"))))));

  TermPtr apps = parse_term("t s1 s2");
  CHECK(alpha_eq(apps, mk_app(mk_app(mk_var("t"), mk_var("s1")), mk_var("s2"))));

  TermPtr body = parse_term("\\u. t s");
  CHECK(alpha_eq(body, mk_abs("u", mk_app(mk_var("t"), mk_var("s")))));
}

TEST_CASE("parse covers the whole grammar") {
  CHECK(is_cc(*parse_term("cc")));
  CHECK(is_instr(*parse_term("#q")));
  CHECK(std::get<EnumLit>(parse_term("nu7")->node).index == 7);
  TermPtr k = parse_term("k[cc . w_b]");
  REQUIRE(is_kont(*k));
  StackPtr s = parse_stack("cc . \\u. u . ?tail");
  auto* p = std::get_if<Push>(&s->node);
  REQUIRE(p);
  CHECK(is_cc(*p->head));
  CHECK(alpha_eq_stack(parse_stack("w_one"), mk_bottom("one")));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_term("\\u. (u"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("t )"), ParseError);
  CHECK_THROWS_AS(parse_stack("cc ."), ParseError);
  try {
    parse_term("(\\u. u");
  } catch (const ParseError& e) {
    CHECK(e.pos > 0);
  }
}

TEST_CASE("substitution") {
  CHECK(alpha_eq(substitute(mk_var("u"), "u", mk_cc()), mk_cc()));
  // shadowing leaves the body alone
  TermPtr shadow = substitute(parse_term("\\u. u"), "u", mk_cc());
  CHECK(alpha_eq(shadow, parse_term("\\u. u")));
  // capture avoidance renames the binder
  TermPtr renamed = substitute(parse_term("\\v. u"), "u", mk_var("v"));
  auto* abs = std::get_if<Abs>(&renamed->node);
  REQUIRE(abs);
  CHECK(abs->var != "v");
  CHECK(alpha_eq(std::get<Abs>(renamed->node).body, mk_var("v")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("\\u. u"), parse_term("\\v. v")));
  CHECK(!alpha_eq(parse_term("\\u.\\v. u"), parse_term("\\u.\\v. v")));
  CHECK(alpha_eq(mk_cc(), mk_cc()));
  CHECK(!alpha_eq(parse_term("\\u. u"), mk_cc()));
}

TEST_CASE("church numerals") {
  CHECK(alpha_eq(church(0), parse_term("\\u.\\v. v")));
  CHECK(alpha_eq(church(1), parse_term("\\u.\\v. u v")));
  CHECK(alpha_eq(church(2), mk_abs("u", mk_abs("v", mk_app(mk_app(church(1), mk_var("u")),
                                                           mk_app(mk_var("u"), mk_var("v")))))));
  for (std::uint64_t n = 0; n <= 64; ++n) {
    CHECK(is_closed(church(n)));
    CHECK(is_realizer(church(n)));
  }
}

TEST_CASE("combinator library") {
  CHECK(alpha_eq(combinator("I"), parse_term("\\u. u")));
  TermPtr th = parse_term("\\u.\\v. (v (u u)) (u u)");
  CHECK(alpha_eq(combinator("w0"), mk_app(th, th)));
  CHECK(alpha_eq(combinator("w6"),
                 mk_abs("f", mk_abs("g", mk_app(mk_var("g"), combinator("w2"))))));
  CHECK(alpha_eq(combinator("w5"), parse_term("\\u.\\v. v u")));
  // no published terms exist for w3 and w4
  CHECK_THROWS(combinator("w3"));
  CHECK_THROWS(combinator("w4"));
  CHECK_THROWS(combinator("nope"));
  for (const auto& id : combinator_ids()) CHECK(is_realizer(combinator(id)));
}

TEST_CASE("is_realizer") {
  CHECK(is_realizer(parse_term("\\u. u")));
  CHECK(!is_realizer(mk_kont(mk_bottom("b"))));
  CHECK(!is_realizer(mk_var("u")));  // not closed
  CHECK(!is_realizer(mk_opaque("t")));
  CHECK(is_realizer(mk_cc()));
}

TEST_CASE("beta normalization") {
  TermPtr s = combinator("s_succ");
  auto one = beta_normalize(mk_app(s, church(0)), 100);
  REQUIRE(one);
  CHECK(alpha_eq(*one, church(1)));
  auto three = beta_normalize(mk_app(s, church(2)), 100);
  REQUIRE(three);
  CHECK(alpha_eq(*three, church(3)));
  auto i = beta_normalize(mk_app(combinator("I"), combinator("I")), 10);
  REQUIRE(i);
  CHECK(alpha_eq(*i, combinator("I")));
  // omega has no normal form
  TermPtr om = parse_term("(\\u. u u) (\\u. u u)");
  CHECK(!beta_normalize(om, 50));
}

TEST_CASE("s_succ reaches every successor numeral") {
  TermPtr s = combinator("s_succ");
  for (std::uint64_t n = 0; n <= 16; ++n) {
    auto norm = beta_normalize(mk_app(s, church(n)), 4000);
    REQUIRE(norm);
    CHECK(alpha_eq(*norm, church(n + 1)));
  }
}

TEST_CASE("print/parse round trip on random terms") {
  std::mt19937 rng(20240811);
  testutil::GenOptions opt;
  opt.allow_enum = true;
  opt.allow_instr = true;
  for (int i = 0; i < 500; ++i) {
    TermPtr t = testutil::gen_closed_term(rng, 1 + i % 14, opt);
    TermPtr back = parse_term(to_string(t));
    CHECK(alpha_eq(back, t));
  }
  for (int i = 0; i < 200; ++i) {
    StackPtr s = testutil::gen_stack(rng, 1 + i % 4, opt);
    CHECK(alpha_eq_stack(parse_stack(to_string(s)), s));
  }
}

TEST_CASE("substitution lemma on random closed values") {
  // t[x:=a][y:=b] = t[y:=b][x:=a[y:=b]] when x not free in b and x != y
  std::mt19937 rng(7);
  testutil::GenOptions opt;
  for (int i = 0; i < 200; ++i) {
    TermPtr a = testutil::gen_closed_term(rng, 1 + i % 6, opt);
    TermPtr b = testutil::gen_closed_term(rng, 1 + (i / 2) % 6, opt);
    TermPtr body = mk_app(mk_app(mk_var("x"), mk_var("y")),
                          mk_abs("x", mk_app(mk_var("x"), mk_var("y"))));
    TermPtr lhs = substitute(substitute(body, "x", a), "y", b);
    TermPtr rhs = substitute(substitute(body, "y", b), "x", substitute(a, "y", b));
    CHECK(alpha_eq(lhs, rhs));
  }
}

TEST_CASE("term ordering is consistent with alpha_eq") {
  std::mt19937 rng(11);
  testutil::GenOptions opt;
  std::vector<TermPtr> ts;
  for (int i = 0; i < 40; ++i) ts.push_back(testutil::gen_closed_term(rng, 1 + i % 8, opt));
  for (const auto& a : ts)
    for (const auto& b : ts) {
      int ab = term_cmp(a, b), ba = term_cmp(b, a);
      CHECK(((ab == 0) == (ba == 0)));
      if (ab != 0) CHECK(((ab < 0) == (ba > 0)));
      CHECK(((ab == 0) == alpha_eq(a, b)));
    }
}
