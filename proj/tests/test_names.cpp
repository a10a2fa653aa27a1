#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlz/combinators.hpp"
#include "rlz/formula.hpp"
#include "rlz/name.hpp"

using namespace rlz;

TEST_CASE("gimel and reish") {
  CHECK(name_eq(mk_gimel({}), mk_empty()));
  NamePtr g = mk_gimel({mk_reish(0)});
  REQUIRE(g->entries.size() == 1);
  CHECK(name_eq(g->entries[0].child, mk_reish(0)));
  CHECK(std::holds_alternative<AllStacks>(g->entries[0].spec));
  CHECK(mk_gimel({mk_reish(0), mk_reish(1)})->entries.size() == 2);

  CHECK(name_eq(mk_reish(0), mk_empty()));
  CHECK(name_eq(mk_reish(1), mk_gimel({mk_reish(0)})));
  CHECK(name_eq(mk_reish(2), mk_gimel({mk_reish(0), mk_reish(1)})));
  for (std::uint64_t n = 0; n <= 8; ++n) {
    std::vector<NamePtr> below;
    for (std::uint64_t m = 0; m < n; ++m) below.push_back(mk_reish(m));
    CHECK(name_eq(mk_reish(n), mk_gimel(below)));
    CHECK(rank(mk_reish(n)) == n);
    CHECK(rank(mk_hat(n)) == n);
  }
}

TEST_CASE("hat names pair children with literal-prefixed stacks") {
  CHECK(name_eq(mk_hat(0), mk_empty()));
  NamePtr h1 = mk_hat(1);
  REQUIRE(h1->entries.size() == 1);
  CHECK(name_eq(h1->entries[0].child, mk_hat(0)));
  auto* pre = std::get_if<PrefixAll>(&h1->entries[0].spec);
  REQUIRE(pre);
  REQUIRE(pre->prefix.size() == 1);
  CHECK(alpha_eq(pre->prefix[0], mk_enum(0)));
  NamePtr h2 = mk_hat(2);
  CHECK(h2->entries.size() == 2);
  bool has_nu1 = false;
  for (const auto& e : h2->entries)
    if (auto* p = std::get_if<PrefixAll>(&e.spec))
      has_nu1 = has_nu1 || alpha_eq(p->prefix[0], mk_enum(1));
  CHECK(has_nu1);
}

TEST_CASE("sng, up, op") {
  NamePtr a = mk_reish(0), b = mk_reish(1);
  NamePtr s = sng(a);
  REQUIRE(s->entries.size() == 1);
  CHECK(std::holds_alternative<AllStacks>(s->entries[0].spec));

  NamePtr u = up(a, b);
  REQUIRE(u->entries.size() == 2);
  for (const auto& e : u->entries) {
    auto* p = std::get_if<PrefixAll>(&e.spec);
    REQUIRE(p);
    bool is_zero = alpha_eq(p->prefix[0], church(0));
    bool is_one = alpha_eq(p->prefix[0], church(1));
    CHECK((is_zero || is_one));
    if (is_zero) CHECK(name_eq(e.child, a));
    if (is_one) CHECK(name_eq(e.child, b));
  }

  CHECK(name_eq(op(a, a), up(up(sng(a), mk_reish(0)), sng(sng(a)))));
  CHECK(rank(op(mk_reish(0), mk_reish(0))) == 3);
}

TEST_CASE("op is injective over small names") {
  std::vector<NamePtr> pool = {mk_reish(0), mk_reish(1), mk_reish(2),
                               mk_gimel({mk_reish(1)}), up(mk_reish(0), mk_reish(1)),
                               sng(mk_reish(1))};
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool)
        for (const auto& d : pool) {
          bool same = name_eq(a, c) && name_eq(b, d);
          CHECK(name_eq(op(a, b), op(c, d)) == same);
        }
}

TEST_CASE("entry order does not matter") {
  NamePtr ab = mk_name({{mk_reish(0), AllStacks{}}, {mk_reish(1), AllStacks{}}});
  NamePtr ba = mk_name({{mk_reish(1), AllStacks{}}, {mk_reish(0), AllStacks{}}});
  CHECK(name_eq(ab, ba));
  // duplicates collapse
  NamePtr dup = mk_name({{mk_reish(0), AllStacks{}}, {mk_reish(0), AllStacks{}}});
  CHECK(dup->entries.size() == 1);
}

TEST_CASE("lifts") {
  CHECK(name_eq(lift({}), mk_empty()));
  NamePtr l = lift({{mk_reish(0), mk_reish(1)}});
  REQUIRE(l->entries.size() == 1);
  CHECK(name_eq(l->entries[0].child, op(mk_reish(0), mk_reish(1))));
  CHECK(std::holds_alternative<AllStacks>(l->entries[0].spec));

  // the two-valued selector on x = reish 1: one entry per truth value,
  // op-encoding the pair as the domain element
  NamePtr h = h_lift({mk_reish(1)});
  REQUIRE(h->entries.size() == 2);
  bool zero_case = false, one_case = false;
  for (const auto& e : h->entries) {
    zero_case = zero_case || name_eq(e.child, op(op(mk_reish(0), mk_reish(1)), mk_reish(0)));
    one_case = one_case || name_eq(e.child, op(op(mk_reish(1), mk_reish(1)), mk_reish(1)));
  }
  CHECK(zero_case);
  CHECK(one_case);
}

TEST_CASE("ordered lifts") {
  NamePtr s2 = ordered_lift_succ(2);
  REQUIRE(s2->entries.size() == 2);
  for (const auto& e : s2->entries) {
    auto* p = std::get_if<PrefixAll>(&e.spec);
    REQUIRE(p);
    if (alpha_eq(p->prefix[0], mk_enum(0)))
      CHECK(name_eq(e.child, op(mk_hat(0), mk_hat(1))));
    else
      CHECK(name_eq(e.child, op(mk_hat(1), mk_hat(2))));
  }
  NamePtr id1 = ordered_lift({0});
  REQUIRE(id1->entries.size() == 1);
  CHECK(name_eq(id1->entries[0].child, op(mk_hat(0), mk_hat(0))));
  CHECK(name_eq(ordered_lift({}), mk_empty()));
}

TEST_CASE("lt_truth") {
  CHECK(name_eq(lt_truth(mk_reish(0), mk_reish(1)), mk_reish(1)));
  CHECK(name_eq(lt_truth(mk_reish(1), mk_reish(0)), mk_reish(0)));
  CHECK(name_eq(lt_truth(mk_reish(0), mk_gimel({mk_reish(0)})), mk_reish(1)));
}

TEST_CASE("reish ordinal segments") {
  ReishOrdSegment seg0 = reish_ord_segment(0);
  CHECK(seg0.names.empty());
  ReishOrdSegment seg1 = reish_ord_segment(1);
  REQUIRE(seg1.names.size() == 1);
  CHECK(name_eq(seg1.names[0], mk_reish(0)));
  ReishOrdSegment seg3 = reish_ord_segment(3);
  CHECK(seg3.names.size() == 3);
  CHECK(seg3.class_surrogate);
  CHECK(name_eq(seg3.names[2], mk_reish(2)));
}

TEST_CASE("dom and rank") {
  auto d = dom(mk_reish(2));
  REQUIRE(d.size() == 2);
  CHECK(name_eq(d[0], mk_reish(0)));
  CHECK(name_eq(d[1], mk_reish(1)));
  CHECK(rank(mk_reish(0)) == 0);
}

TEST_CASE("universes close under dom") {
  std::vector<NamePtr> outputs = {mk_reish(4),
                                  mk_hat(3),
                                  op(mk_reish(1), mk_reish(2)),
                                  up(mk_reish(0), mk_reish(2)),
                                  lift({{mk_reish(0), mk_reish(1)}}),
                                  ordered_lift_succ(3),
                                  h_lift({mk_reish(1), mk_hat(2)})};
  for (const auto& n : outputs) {
    NameUniverse u;
    u.add_closed(n);
    CHECK(u.dom_closed());
    CHECK(u.contains(n));
  }
}

TEST_CASE("atomic falsity values") {
  // (eps-not, reish 0, reish 1): the full stack set
  auto c1 = falsity_atomic(AtomKind::NotEps, mk_reish(0), mk_reish(1));
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].slots.empty());
  CHECK(std::holds_alternative<AllStacks>(c1[0].tail));

  // no entry matches
  CHECK(falsity_atomic(AtomKind::NotEps, mk_reish(1), mk_reish(1)).empty());

  // identical names: ||bot||, i.e. every stack
  auto c3 = falsity_atomic(AtomKind::Neq, mk_reish(0), mk_reish(0));
  REQUIRE(c3.size() == 1);
  CHECK(std::holds_alternative<AllStacks>(c3[0].tail));
  CHECK(falsity_atomic(AtomKind::Neq, mk_reish(0), mk_reish(1)).empty());

  // notin lists both inclusion obligations per entry of the right name
  auto c4 = falsity_atomic(AtomKind::NotIn, mk_reish(0), mk_reish(2));
  REQUIRE(c4.size() == 2);
  for (const auto& c : c4) {
    REQUIRE(c.slots.size() == 2);
    CHECK(c.slots[0].kind == AtomKind::Sub);
    CHECK(name_eq(c.slots[0].lhs, mk_reish(0)));
    CHECK(c.slots[1].kind == AtomKind::Sub);
    CHECK(name_eq(c.slots[1].rhs, mk_reish(0)));
  }

  // sub lists one notin obligation per entry of the left name
  auto c5 = falsity_atomic(AtomKind::Sub, mk_reish(2), mk_reish(1));
  REQUIRE(c5.size() == 2);
  CHECK(c5[0].slots.size() == 1);
  CHECK(c5[0].slots[0].kind == AtomKind::NotIn);
}

TEST_CASE("eps-not falsity is nonempty exactly on literal domain membership") {
  std::vector<NamePtr> pool = {mk_reish(0), mk_reish(1), mk_reish(2), mk_hat(2),
                               up(mk_reish(0), mk_reish(1)), sng(mk_reish(1)),
                               op(mk_reish(0), mk_reish(0))};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      bool in_dom = false;
      for (const auto& d : dom(b)) in_dom = in_dom || name_eq(d, a);
      CHECK(!falsity_atomic(AtomKind::NotEps, a, b).empty() == in_dom);
    }
}

TEST_CASE("stack spec matching") {
  StackPtr pi = mk_push(mk_enum(1), mk_bottom("b"));
  CHECK(spec_matches(AllStacks{}, pi));
  CHECK(spec_matches(PrefixAll{{mk_enum(1)}}, pi));
  CHECK(!spec_matches(PrefixAll{{mk_enum(2)}}, pi));
  CHECK(spec_matches(FiniteStacks{{pi}}, pi));
  CHECK(!spec_matches(FiniteStacks{{mk_bottom("b")}}, pi));

  CHECK(spec_subset(PrefixAll{{mk_enum(1)}}, AllStacks{}));
  CHECK(spec_subset(PrefixAll{{mk_enum(1), mk_cc()}}, PrefixAll{{mk_enum(1)}}));
  CHECK(!spec_subset(AllStacks{}, PrefixAll{{mk_enum(1)}}));
  CHECK(spec_subset(FiniteStacks{{pi}}, PrefixAll{{mk_enum(1)}}));
}
