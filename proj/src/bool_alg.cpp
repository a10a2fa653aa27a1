#include "rlz/bool_alg.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace rlz {

Elem BoolAlg::by_name(const std::string& n) const {
  for (Elem i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  throw std::runtime_error("unknown algebra element: " + n);
}

void BoolAlg::validate() const {
  std::size_t n = size();
  if (n == 0) throw std::runtime_error("algebra: empty carrier");
  if (meet_tab.size() != n * n || join_tab.size() != n * n || neg_tab.size() != n)
    throw std::runtime_error("algebra: table size mismatch");
  auto fail = [](const std::string& law) {
    throw std::runtime_error("algebra law violated: " + law);
  };
  for (Elem a = 0; a < n; ++a) {
    if (meet(a, one) != a) fail("a /\\ 1 = a");
    if (join(a, zero) != a) fail("a \\/ 0 = a");
    if (meet(a, neg(a)) != zero) fail("a /\\ ~a = 0");
    if (join(a, neg(a)) != one) fail("a \\/ ~a = 1");
    for (Elem b = 0; b < n; ++b) {
      if (meet(a, b) != meet(b, a)) fail("commutativity of /\\");
      if (join(a, b) != join(b, a)) fail("commutativity of \\/");
      if (meet(a, join(a, b)) != a) fail("absorption a /\\ (a \\/ b) = a");
      if (join(a, meet(a, b)) != a) fail("absorption a \\/ (a /\\ b) = a");
      for (Elem c = 0; c < n; ++c) {
        if (meet(a, meet(b, c)) != meet(meet(a, b), c)) fail("associativity of /\\");
        if (join(a, join(b, c)) != join(join(a, b), c)) fail("associativity of \\/");
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) fail("distributivity");
      }
    }
  }
  // <= (a /\ b = a) must be a partial order; antisymmetry follows from the
  // definition, reflexivity needs idempotence.
  for (Elem a = 0; a < n; ++a)
    if (meet(a, a) != a) fail("idempotence of /\\");
}

BoolAlg BoolAlg::powerset(unsigned atoms) {
  if (atoms > 16) throw std::runtime_error("powerset: too many atoms");
  std::size_t n = 1u << atoms;
  BoolAlg alg;
  alg.names.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (m == 0) {
      alg.names[m] = "0";
    } else if (m == n - 1) {
      alg.names[m] = "1";
    } else {
      std::string s;
      for (unsigned i = 0; i < atoms; ++i)
        if (m & (1u << i)) s += "a" + std::to_string(i + 1);
      alg.names[m] = s;
    }
  }
  alg.meet_tab.resize(n * n);
  alg.join_tab.resize(n * n);
  alg.neg_tab.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    alg.neg_tab[a] = static_cast<Elem>(~a & (n - 1));
    for (std::size_t b = 0; b < n; ++b) {
      alg.meet_tab[a * n + b] = static_cast<Elem>(a & b);
      alg.join_tab[a * n + b] = static_cast<Elem>(a | b);
    }
  }
  alg.zero = 0;
  alg.one = static_cast<Elem>(n - 1);
  alg.validate();
  return alg;
}

TauContext::TauContext(BoolAlg a, std::map<std::string, Elem> bottoms)
    : alg(std::move(a)), bottom_map(std::move(bottoms)) {
  bool has_one = false;
  for (const auto& [ident, e] : bottom_map) has_one = has_one || e == alg.one;
  if (!has_one)
    throw std::runtime_error("tau context: some stack bottom must map to one");
}

Elem TauContext::bottom(const std::string& ident) const {
  auto it = bottom_map.find(ident);
  if (it == bottom_map.end()) throw TauError("unmapped stack bottom: w_" + ident);
  return it->second;
}

bool TauContext::surjective_onto_carrier() const {
  std::vector<bool> hit(alg.size(), false);
  for (const auto& [ident, e] : bottom_map) hit[e] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

TauContext TauContext::standard(BoolAlg a) {
  std::map<std::string, Elem> bottoms;
  for (Elem e = 0; e < a.size(); ++e) bottoms[a.name(e)] = e;
  bottoms["zero"] = a.zero;
  bottoms["one"] = a.one;
  return TauContext(std::move(a), std::move(bottoms));
}

namespace {

std::vector<std::string> split_statements(const std::string& content) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : content) {
    if (c == ';' || c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w)
    if (w != "=") out.push_back(w);
  return out;
}

}  // namespace

TauContext parse_algebra_file(const std::string& content) {
  std::vector<std::string> names;
  std::vector<std::tuple<std::string, std::string, std::string>> meets, joins;
  std::vector<std::pair<std::string, std::string>> negs, bottoms;
  std::string zero_name, one_name;

  for (const auto& stmt : split_statements(content)) {
    auto w = words(stmt);
    if (w.empty() || w[0][0] == '#') continue;
    if (w[0] == "atoms" && w.size() == 2)
      return TauContext::standard(BoolAlg::powerset(static_cast<unsigned>(std::stoul(w[1]))));
    if (w[0] == "elem" && w.size() == 2) {
      names.push_back(w[1]);
    } else if (w[0] == "zero" && w.size() == 2) {
      zero_name = w[1];
    } else if (w[0] == "one" && w.size() == 2) {
      one_name = w[1];
    } else if (w[0] == "meet" && w.size() == 4) {
      meets.emplace_back(w[1], w[2], w[3]);
    } else if (w[0] == "join" && w.size() == 4) {
      joins.emplace_back(w[1], w[2], w[3]);
    } else if (w[0] == "neg" && w.size() == 3) {
      negs.emplace_back(w[1], w[2]);
    } else if (w[0] == "bottom" && w.size() == 3) {
      bottoms.emplace_back(w[1], w[2]);
    } else {
      throw std::runtime_error("algebra file: bad statement: " + stmt);
    }
  }
  if (names.empty()) throw std::runtime_error("algebra file: no elements");
  BoolAlg alg;
  alg.names = names;
  std::size_t n = names.size();
  alg.meet_tab.assign(n * n, n);  // poison
  alg.join_tab.assign(n * n, n);
  alg.neg_tab.assign(n, n);
  alg.zero = alg.by_name(zero_name.empty() ? names.front() : zero_name);
  alg.one = alg.by_name(one_name.empty() ? names.back() : one_name);
  for (const auto& [a, b, c] : meets) {
    alg.meet_tab[alg.by_name(a) * n + alg.by_name(b)] = alg.by_name(c);
    alg.meet_tab[alg.by_name(b) * n + alg.by_name(a)] = alg.by_name(c);
  }
  for (const auto& [a, b, c] : joins) {
    alg.join_tab[alg.by_name(a) * n + alg.by_name(b)] = alg.by_name(c);
    alg.join_tab[alg.by_name(b) * n + alg.by_name(a)] = alg.by_name(c);
  }
  for (const auto& [a, b] : negs) alg.neg_tab[alg.by_name(a)] = alg.by_name(b);
  for (auto v : alg.meet_tab)
    if (v >= n) throw std::runtime_error("algebra file: incomplete meet table");
  for (auto v : alg.join_tab)
    if (v >= n) throw std::runtime_error("algebra file: incomplete join table");
  for (auto v : alg.neg_tab)
    if (v >= n) throw std::runtime_error("algebra file: incomplete neg table");
  alg.validate();
  if (bottoms.empty()) return TauContext::standard(std::move(alg));
  std::map<std::string, Elem> bm;
  for (const auto& [w, e] : bottoms) bm[w] = alg.by_name(e);
  return TauContext(std::move(alg), std::move(bm));
}

TauContext load_algebra(const std::string& spec) {
  if (spec.rfind("atoms", 0) == 0 && spec.size() > 5 &&
      std::all_of(spec.begin() + 5, spec.end(), [](char c) { return std::isdigit(c); }))
    return TauContext::standard(BoolAlg::powerset(static_cast<unsigned>(std::stoul(spec.substr(5)))));
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open algebra file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra_file(buf.str());
}

// ---------- tau ----------

Elem tau(const TermPtr& t, const TauContext& ctx) {
  const BoolAlg& B = ctx.alg;
  if (is_var(*t) || is_cc(*t)) return B.one;
  if (auto* a = std::get_if<App>(&t->node)) return B.meet(tau(a->fn, ctx), tau(a->arg, ctx));
  if (auto* l = std::get_if<Abs>(&t->node)) return tau(l->body, ctx);
  if (auto* k = std::get_if<Kont>(&t->node)) return tau(k->stack, ctx);
  if (is_opaque(*t)) throw TauError("tau undefined on opaque term: " + to_string(t));
  if (is_enum(*t)) throw TauError("tau undefined on enumeration literal: " + to_string(t));
  throw TauError("tau undefined on instruction: " + to_string(t));
}

Elem tau(const StackPtr& s, const TauContext& ctx) {
  if (auto* b = std::get_if<Bottom>(&s->node)) return ctx.bottom(b->name);
  if (auto* p = std::get_if<Push>(&s->node))
    return ctx.alg.meet(tau(p->head, ctx), tau(p->rest, ctx));
  throw TauError("tau undefined on opaque stack tail");
}

Elem tau(const Process& p, const TauContext& ctx) {
  return ctx.alg.meet(tau(p.head, ctx), tau(p.tail, ctx));
}

PoleVerdict pole_decide(const Process& p, const TauContext& ctx) {
  Elem v = tau(p, ctx);
  return {v == ctx.alg.zero, v};
}

bool preorder_decide(const Process& p, const Process& q, const TauContext& ctx) {
  return ctx.alg.leq(tau(p, ctx), tau(q, ctx));
}

Elem tau_sup(const StackSpec& spec, const TauContext& ctx) {
  const BoolAlg& B = ctx.alg;
  if (std::holds_alternative<AllStacks>(spec)) return B.one;
  if (auto* p = std::get_if<PrefixAll>(&spec)) {
    Elem v = B.one;
    for (const auto& t : p->prefix) v = B.meet(v, tau(t, ctx));
    return v;
  }
  Elem v = B.zero;
  for (const auto& st : std::get<FiniteStacks>(spec).stacks) v = B.join(v, tau(st, ctx));
  return v;
}

}  // namespace rlz
