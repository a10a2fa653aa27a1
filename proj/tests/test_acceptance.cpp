// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line, runnable on its own via ctest -R test_acceptance.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "forcing_oracle.hpp"
#include "rlz/chain.hpp"
#include "rlz/combinators.hpp"
#include "rlz/corpus.hpp"
#include "rlz/forcing.hpp"
#include "rlz/machine.hpp"
#include "rlz/parser.hpp"
#include "rlz/verifier.hpp"
#include "test_util.hpp"

using namespace rlz;

namespace {

const std::string kCorpusPath = std::string(RLZ_SOURCE_DIR) + "/corpus/paper.corpus";

const CorpusReport& paper_report() {
  static const CorpusReport report = [] {
    ProveConfig config;
    return verify_corpus(load_corpus(kCorpusPath), config);
  }();
  return report;
}

const GoalReport& goal_report(const std::string& id) {
  for (const auto& g : paper_report().goals)
    if (g.id == id) return g;
  throw std::runtime_error("no goal " + id + " in the paper corpus");
}

bool goal_accepted(const std::string& id) {
  const GoalReport& g = goal_report(id);
  return g.pass && g.outcome == Outcome::Accepted;
}

struct Criterion {
  const char* name;
  bool ok = true;
  ~Criterion() { std::printf("%-24s %s\n", name, ok ? "PASS" : "FAIL"); }
  void require(bool cond) { ok = ok && cond; }
};

Process proc(const std::string& term, const std::string& stack) {
  auto t = resolve_free_vars(parse_term(term), combinator_table(), true);
  auto s = resolve_free_vars_stack(parse_stack(stack), combinator_table(), true);
  return {t, s};
}

}  // namespace

TEST_CASE("criterion 1: machine conformance") {
  Criterion c{"1 machine-conformance"};
  // the four displayed transitions
  auto expect_step = [&](const std::string& from_t, const std::string& from_s,
                         const std::string& to_t, const std::string& to_s) {
    StepResult r = step(proc(from_t, from_s));
    bool ok = r.next && alpha_eq_process(*r.next, proc(to_t, to_s));
    c.require(ok);
    CHECK_MESSAGE(ok, from_t + " * " + from_s);
  };
  expect_step("t s", "?pi", "t", "s.?pi");                    // push
  expect_step("\\u. u u", "s.?pi", "s s", "?pi");             // grab
  expect_step("cc", "t.?pi", "t", "k[?pi].?pi");              // save
  expect_step("k[w_sigma]", "t.?pi", "t", "w_sigma");         // restore
  // chi trichotomy for all indices up to 10
  for (std::uint64_t a = 0; a <= 10; ++a)
    for (std::uint64_t b = 0; b <= 10; ++b) {
      Process p{mk_instr("chi"),
                mk_push(mk_enum(a),
                        mk_push(mk_enum(b),
                                mk_push(mk_opaque("t"),
                                        mk_push(mk_opaque("s"),
                                                mk_push(mk_opaque("r"),
                                                        mk_opaque_tail("pi"))))))};
      StepResult r = step(p);
      const char* want = a < b ? "t" : a == b ? "s" : "r";
      c.require(r.next && alpha_eq(r.next->head, mk_opaque(want)) &&
                alpha_eq_stack(r.next->tail, mk_opaque_tail("pi")));
    }
  // determinism and fuel-prefix monotonicity on >= 1000 random processes
  std::mt19937 rng(160914);
  testutil::GenOptions opt;
  opt.allow_enum = true;
  opt.allow_instr = true;
  for (int i = 0; i < 1000; ++i) {
    Process p = testutil::gen_process(rng, 1 + i % 16, opt);
    StepResult r1 = step(p);
    StepResult r2 = step(p);
    c.require(r1.next.has_value() == r2.next.has_value());
    if (r1.next) c.require(alpha_eq_process(*r1.next, *r2.next));
    Machine::Trace shorter = reduce(p, static_cast<std::uint64_t>(i % 5));
    Machine::Trace longer = reduce(p, static_cast<std::uint64_t>(i % 5) + 2);
    bool prefix = shorter.steps.size() <= longer.steps.size();
    for (std::size_t k = 0; prefix && k < shorter.steps.size(); ++k)
      prefix = alpha_eq_process(shorter.steps[k], longer.steps[k]);
    c.require(prefix);
  }
  CHECK(c.ok);
}

TEST_CASE("criterion 2: peirce's law and the continuation rule") {
  Criterion c{"2 peirce-and-kpi"};
  auto t0 = std::chrono::steady_clock::now();
  c.require(goal_accepted("peirce"));
  auto t1 = std::chrono::steady_clock::now();
  c.require(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() < 1000);

  // the continuation rule derives from evaluation alone
  auto t2 = std::chrono::steady_clock::now();
  Goal goal;
  goal.realizer_hyps.push_back({"u", parse_formula("reish 0 !eps reish 1")});
  goal.falsity_hyps.push_back({"pi", parse_formula("reish 0 !eps reish 1")});
  goal.falsity_hyps.push_back({"rho", parse_formula("reish 0 !eps reish 2")});
  goal.claim = GoalInPole{
      {mk_kont(mk_opaque_tail("pi")), mk_push(mk_opaque("u"), mk_opaque_tail("rho"))}};
  NameUniverse u;
  u.add_closed(mk_reish(2));
  Engine engine(u, ProveConfig{});
  ProofResult r = engine.prove(goal);
  c.require(r.outcome == Outcome::Accepted);
  c.require(r.trace.render().find("KPI") == std::string::npos);
  auto t3 = std::chrono::steady_clock::now();
  c.require(std::chrono::duration_cast<std::chrono::milliseconds>(t3 - t2).count() < 1000);
  c.require(goal_accepted("kpi_derived"));
  CHECK(c.ok);
}

TEST_CASE("criterion 3: bounded universal quantifiers") {
  Criterion c{"3 bounded-universals"};
  for (const char* id : {"bu1_s1", "bu1_s2", "bu1_s3", "bu2_s1", "bu2_s2", "bu2_s3"}) {
    c.require(goal_accepted(id));
    c.require(uniformity_violations(goal_report(id).result.trace).empty());
  }
  CHECK(c.ok);
}

TEST_CASE("criterion 4: reish ordinals") {
  Criterion c{"4 reish-ordinals"};
  for (const char* id : {"dord1_1", "dord1_2", "dord1_3", "dord1_4", "dord1_5", "dord2_1",
                         "dord2_2", "dord2_3", "dord2_4", "dord2_5"})
    c.require(goal_accepted(id));
  // successor lemma cites the w0 lemma
  for (const char* id : {"dsucc_0", "dsucc_1", "dsucc_2", "dsucc_3", "dsucc_4"}) {
    c.require(goal_accepted(id));
    c.require(goal_report(id).result.trace.render().find("LEMMA  w0_sub") !=
              std::string::npos);
  }
  // limit-segment goal with its recorded truncation
  c.require(goal_accepted("dlim"));
  c.require(goal_report("dlim").note.find("truncated at bound 5") != std::string::npos);
  CHECK(c.ok);
}

TEST_CASE("criterion 5: hat ordinals") {
  Criterion c{"5 hat-ordinals"};
  for (const char* id : {"hord1_1", "hord1_2", "hord1_3", "hord1_4", "hord1_5", "hord2_1",
                         "hord2_2", "hord2_3", "hord2_4", "hord2_5"})
    c.require(goal_accepted(id));
  for (const char* id : {"hsucc_1", "hsucc_2", "hsucc_3", "hsucc_4", "hsucc_5"})
    c.require(goal_accepted(id));
  for (const char* id : {"hmem_0_1", "hmem_0_2", "hmem_1_2", "hmem_0_3", "hmem_1_3",
                         "hmem_2_3", "hmem_0_4", "hmem_1_4", "hmem_2_4", "hmem_3_4"})
    c.require(goal_accepted(id));
  CHECK(c.ok);
}

TEST_CASE("criterion 6: useful realizers") {
  Criterion c{"6 useful-realizers"};
  for (const char* id : {"w0_sub", "w2_nin", "w1_exteq", "w5_dneg", "w6_1_2", "w6_0_3"})
    c.require(goal_accepted(id));
  c.require(goal_report("w0_sub").result.trace.rule == "RANK-IND");
  c.require(goal_report("w2_nin").result.trace.rule == "RANK-IND");
  // negative control: without induction hypotheses the w0 goal is rejected
  ProveConfig no_ih;
  no_ih.rank_induction = false;
  auto goals = load_corpus(kCorpusPath);
  CorpusReport control = verify_corpus(goals, no_ih);
  for (const auto& g : control.goals)
    if (g.id == "w0_sub") c.require(g.outcome == Outcome::Rejected);
  CHECK(c.ok);
}

TEST_CASE("criterion 7: the ordinal segment and reish omega") {
  Criterion c{"7 rord-and-romega"};
  c.require(goal_accepted("rordseg"));
  c.require(goal_report("rordseg").result.trace.render().find("LEMMA  w0_sub") !=
            std::string::npos);
  c.require(goal_accepted("romega"));
  c.require(goal_report("romega").note.find("truncated at bound 5") != std::string::npos);
  CHECK(c.ok);
}

TEST_CASE("criterion 8: Boolean backend") {
  Criterion c{"8 boolean-backend"};
  // tau homomorphism identities on >= 1000 random terms and stacks
  TauContext ctx = TauContext::standard(BoolAlg::powerset(3));
  std::mt19937 rng(5150);
  testutil::GenOptions opt;
  opt.bottoms.clear();
  for (Elem e = 0; e < ctx.alg.size(); ++e) opt.bottoms.push_back(ctx.alg.name(e));
  for (int i = 0; i < 1000; ++i) {
    TermPtr t = testutil::gen_closed_term(rng, 1 + i % 10, opt);
    TermPtr t2 = testutil::gen_closed_term(rng, 1 + (i / 2) % 8, opt);
    StackPtr s = testutil::gen_stack(rng, i % 4, opt);
    c.require(tau(mk_app(t, t2), ctx) == ctx.alg.meet(tau(t, ctx), tau(t2, ctx)));
    c.require(tau(mk_abs("z", t), ctx) == tau(t, ctx));
    c.require(tau(mk_kont(s), ctx) == tau(s, ctx));
    c.require(tau(mk_push(t, s), ctx) == ctx.alg.meet(tau(t, ctx), tau(s, ctx)));
    c.require(tau(Process{t, s}, ctx) == ctx.alg.meet(tau(t, ctx), tau(s, ctx)));
    c.require(tau(mk_cc(), ctx) == ctx.alg.one);
  }
  // pole upward closure along traces of length <= 20 from >= 200 processes
  TauContext ctx2 = TauContext::standard(BoolAlg::powerset(2));
  testutil::GenOptions opt2;
  opt2.bottoms.clear();
  for (Elem e = 0; e < ctx2.alg.size(); ++e) opt2.bottoms.push_back(ctx2.alg.name(e));
  for (int i = 0; i < 200; ++i) {
    Process p = testutil::gen_process(rng, 2 + i % 12, opt2);
    Machine::Trace tr = reduce(p, 20);
    for (std::size_t k = 0; k + 1 < tr.steps.size(); ++k) {
      c.require(ctx2.alg.leq(tau(tr.steps[k], ctx2), tau(tr.steps[k + 1], ctx2)));
      if (pole_decide(tr.steps[k + 1], ctx2).in_pole)
        c.require(pole_decide(tr.steps[k], ctx2).in_pole);
    }
  }
  // forcing agrees exactly with the brute-force oracle
  NameUniverse u;
  u.add_closed(mk_reish(2));
  u.add_closed(sng(mk_reish(1)));
  std::vector<NamePtr> names = u.sorted();
  std::vector<FormulaPtr> formulas = {f_top(), f_bot()};
  for (const auto& a : names)
    for (const auto& b : names)
      for (AtomKind k : {AtomKind::NotEps, AtomKind::Neq, AtomKind::NotIn, AtomKind::Sub})
        formulas.push_back(f_atom(k, ne_lit(a), ne_lit(b)));
  std::size_t base = formulas.size();
  for (std::size_t i = 0; i < base; i += 7)
    for (std::size_t j = 0; j < base; j += 11)
      formulas.push_back(f_imp(formulas[i], formulas[j]));
  formulas.push_back(parse_formula("all x. x sub x"));
  formulas.push_back(parse_formula("all x. (x !eps reish 2 -> x !eps reish 1)"));
  formulas.push_back(parse_formula("all x^gimel{reish 0, reish 1}. (x !eps reish 2 -> bot)"));
  formulas.push_back(parse_formula("all x^rord(3). ((x sub reish 2 -> bot) -> bot)"));
  for (unsigned atoms = 1; atoms <= 3; ++atoms) {
    TauContext bctx = TauContext::standard(BoolAlg::powerset(atoms));
    oracle::BruteForcer brute(u, bctx, 3);
    for (const auto& f : formulas) c.require(forcing_value(f, u, bctx) == brute.forcing(f));
  }
  CHECK(c.ok);
}

TEST_CASE("criterion 9: chain-condition bridge") {
  Criterion c{"9 chain-conditions"};
  for (unsigned atoms = 2; atoms <= 4; ++atoms) {
    TauContext ctx = TauContext::standard(BoolAlg::powerset(atoms));
    const BoolAlg& B = ctx.alg;
    for (std::uint64_t delta = 2; delta <= 4; ++delta) {
      auto ba = ba_delta_cc(B, delta);
      auto alg = algebra_delta_chain_condition(ctx, delta);
      auto uni = uniform_delta_chain_condition(ctx, delta);
      c.require(ba.holds == alg.holds && alg.holds == uni.holds);
      // the expected verdict: a powerset on k atoms has maximal antichains
      // of size k
      c.require(ba.holds == (delta > atoms));
      if (ba.antichain)
        for (std::size_t i = 0; i < ba.antichain->size(); ++i)
          for (std::size_t j = i + 1; j < ba.antichain->size(); ++j)
            c.require(B.meet((*ba.antichain)[i], (*ba.antichain)[j]) == B.zero);
      if (alg.seq)
        for (std::size_t i = 0; i < alg.seq->size(); ++i)
          for (std::size_t j = i + 1; j < alg.seq->size(); ++j)
            c.require(B.meet(B.meet(*alg.context, (*alg.seq)[i]), (*alg.seq)[j]) == B.zero);
    }
  }
  CHECK(c.ok);
}

TEST_CASE("criterion 10: the displayed reductions of the chain-condition theorem") {
  Criterion c{"10 displayed-reductions"};
  // first display: the realizer v applied to t.s.pi
  std::string v =
      "\\t.\\s. (cc (\\k. (w5 (\\u. k ((p (t w1)) u))) (s I))) w6";
  Process start = proc(v, "t.s.?pi");
  // the machine substitutes under grab, so the displayed lines are the
  // start, the saturated body, the save redex, its contractum, and the
  // final push state
  std::vector<Process> expected = {
      start,
      proc("(cc (\\k. (w5 (\\u. k ((p (t w1)) u))) (s I))) w6", "?pi"),
      proc("cc", "(\\k. (w5 (\\u. k ((p (t w1)) u))) (s I)).w6.?pi"),
      proc("\\k. (w5 (\\u. k ((p (t w1)) u))) (s I)", "k[w6.?pi].w6.?pi"),
      proc("w5 (\\u. k[w6.?pi] ((p (t w1)) u))", "(s I).w6.?pi"),
  };
  c.require(check_displayed_trace(start, expected, 64));

  // byte-exact rendering of the displayed lines in the trace format
  std::string joined;
  for (const auto& p : expected) joined += to_string(p) + "\n";
  std::string golden_path = std::string(RLZ_SOURCE_DIR) + "/tests/golden/chain_display_1.txt";
  std::FILE* f1 = std::fopen(golden_path.c_str(), "rb");
  c.require(f1 != nullptr);
  if (f1) {
    std::string content;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f1)) > 0) content.append(buf, n);
    std::fclose(f1);
    c.require(content == joined);
  }

  // second display: the deconstructed term against u_b . pi_b
  Process start2 = proc("\\u. k[w6.?pi] ((p (t w1)) u)", "u_b.?pi_b");
  std::vector<Process> expected2 = {
      start2,
      proc("k[w6.?pi]", "((p (t w1)) u_b).?pi_b"),
      proc("(p (t w1)) u_b", "w6.?pi"),
      proc("p", "(t w1).u_b.w6.?pi"),
  };
  c.require(check_displayed_trace(start2, expected2, 32));
  std::string joined2;
  for (const auto& p : expected2) joined2 += to_string(p) + "\n";
  std::string golden2 = std::string(RLZ_SOURCE_DIR) + "/tests/golden/chain_display_2.txt";
  std::FILE* f2 = std::fopen(golden2.c_str(), "rb");
  c.require(f2 != nullptr);
  if (f2) {
    std::string content;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f2)) > 0) content.append(buf, n);
    std::fclose(f2);
    c.require(content == joined2);
  }
  CHECK(c.ok);
}

TEST_CASE("criterion 11: soundness cross-check against the Boolean backend") {
  Criterion c{"11 soundness-crosscheck"};
  auto goals = load_corpus(kCorpusPath);
  int checked = 0;
  for (const auto& cg : goals) {
    if (!cg.expect_accept) continue;
    auto* gr = std::get_if<GoalRealizes>(&cg.goal.claim);
    if (!gr || !cg.goal.realizer_hyps.empty() || !cg.goal.falsity_hyps.empty()) continue;
    if (contains_opaque(gr->term) || mentions_hat(gr->phi)) continue;
    c.require(goal_accepted(cg.id));
    NameUniverse u = cg.universe;
    for (const auto& n : formula_names(gr->phi)) u.add_closed(n);
    for (unsigned atoms = 1; atoms <= 3; ++atoms) {
      TauContext ctx = TauContext::standard(BoolAlg::powerset(atoms));
      c.require(forcing_value(gr->phi, u, ctx) == ctx.alg.zero);
    }
    ++checked;
  }
  c.require(checked >= 25);
  CHECK(c.ok);
}
