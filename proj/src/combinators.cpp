#include "rlz/combinators.hpp"

#include <map>
#include <stdexcept>

#include "rlz/parser.hpp"

namespace rlz {

TermPtr church(std::uint64_t n) {
  if (n == 0) return parse_term("\\u.\\v. v");
  TermPtr prev = church(n - 1);
  // \u.\v. (n-1 u)(u v)
  return mk_abs("u", mk_abs("v", mk_app(mk_app(prev, mk_var("u")),
                                        mk_app(mk_var("u"), mk_var("v")))));
}

namespace {

std::map<std::string, TermPtr> build_combinators() {
  std::map<std::string, TermPtr> m;
  m["I"] = parse_term("\\u. u");
  m["th"] = parse_term("\\u.\\v. (v (u u)) (u u)");
  m["w0"] = mk_app(m["th"], m["th"]);
  m["w1"] = mk_abs("u", mk_app(mk_app(mk_var("u"), m["w0"]), m["w0"]));
  m["th'"] = parse_term("\\u.\\v.\\w. v (u u)");
  m["w2"] = mk_app(m["th'"], m["th'"]);
  m["w5"] = parse_term("\\u.\\v. v u");
  m["w6"] = mk_abs("f", mk_abs("g", mk_app(mk_var("g"), m["w2"])));
  m["s_succ"] = parse_term("\\n.\\u.\\v. (n u) (u v)");
  return m;
}

const std::map<std::string, TermPtr>& combinators() {
  static const std::map<std::string, TermPtr> m = build_combinators();
  return m;
}

}  // namespace

TermPtr combinator(const std::string& id) {
  const auto& m = combinators();
  auto it = m.find(id);
  if (it == m.end()) throw std::runtime_error("unknown combinator: " + id);
  return it->second;
}

const std::vector<std::string>& combinator_ids() {
  static const std::vector<std::string> ids = {"I",  "th", "w0", "w1", "th'",
                                               "w2", "w5", "w6", "s_succ"};
  return ids;
}

const std::vector<std::pair<std::string, TermPtr>>& combinator_table() {
  static const std::vector<std::pair<std::string, TermPtr>> table = [] {
    std::vector<std::pair<std::string, TermPtr>> t;
    for (const auto& id : combinator_ids()) t.emplace_back(id, combinator(id));
    return t;
  }();
  return table;
}

namespace {

// One leftmost-outermost beta step; reduces under binders.
std::optional<TermPtr> beta_step(const TermPtr& t) {
  if (auto* a = std::get_if<App>(&t->node)) {
    if (auto* l = std::get_if<Abs>(&a->fn->node))
      return substitute(l->body, l->var, a->arg);
    if (auto fn = beta_step(a->fn)) return mk_app(*fn, a->arg);
    if (auto arg = beta_step(a->arg)) return mk_app(a->fn, *arg);
    return std::nullopt;
  }
  if (auto* l = std::get_if<Abs>(&t->node)) {
    if (auto body = beta_step(l->body)) return mk_abs(l->var, *body);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<TermPtr> beta_normalize(const TermPtr& t, std::uint64_t fuel) {
  TermPtr cur = t;
  for (std::uint64_t i = 0; i <= fuel; ++i) {
    auto next = beta_step(cur);
    if (!next) return cur;
    if (i == fuel) break;
    cur = *next;
  }
  return std::nullopt;
}

}  // namespace rlz
