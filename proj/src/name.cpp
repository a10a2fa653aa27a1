#include "rlz/name.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "rlz/combinators.hpp"

namespace rlz {

// ---------- Canonical term keys (alpha-insensitive) ----------

namespace {

void term_key_rec(std::ostringstream& out, const TermPtr& t,
                  std::vector<std::string>& binders) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    for (std::size_t i = binders.size(); i-- > 0;) {
      if (binders[i] == v->name) {
        out << 'b' << (binders.size() - 1 - i);
        return;
      }
    }
    out << 'v' << v->name;
  } else if (auto* a = std::get_if<App>(&t->node)) {
    out << '(';
    term_key_rec(out, a->fn, binders);
    out << ' ';
    term_key_rec(out, a->arg, binders);
    out << ')';
  } else if (auto* l = std::get_if<Abs>(&t->node)) {
    out << "(\\.";
    binders.push_back(l->var);
    term_key_rec(out, l->body, binders);
    binders.pop_back();
    out << ')';
  } else if (std::holds_alternative<Cc>(t->node)) {
    out << "cc";
  } else if (auto* k = std::get_if<Kont>(&t->node)) {
    out << "k[";
    StackPtr s = k->stack;
    while (true) {
      if (auto* p = std::get_if<Push>(&s->node)) {
        term_key_rec(out, p->head, binders);
        out << '.';
        s = p->rest;
      } else if (auto* b = std::get_if<Bottom>(&s->node)) {
        out << "w_" << b->name;
        break;
      } else {
        out << '?' << std::get<OpaqueTail>(s->node).name;
        break;
      }
    }
    out << ']';
  } else if (auto* i = std::get_if<Instr>(&t->node)) {
    out << '#' << i->name;
  } else if (auto* e = std::get_if<EnumLit>(&t->node)) {
    out << "nu" << e->index;
  } else {
    out << '!' << std::get<OpaqueTerm>(t->node).name;
  }
}

std::string term_key(const TermPtr& t) {
  std::ostringstream out;
  std::vector<std::string> binders;
  term_key_rec(out, t, binders);
  return out.str();
}

}  // namespace

std::string spec_key(const StackSpec& s) {
  if (std::holds_alternative<AllStacks>(s)) return "Pi";
  if (auto* p = std::get_if<PrefixAll>(&s)) {
    std::string out = "pre:";
    for (const auto& t : p->prefix) out += term_key(t) + ".";
    return out;
  }
  std::string out = "fin:";
  for (const auto& st : std::get<FiniteStacks>(s).stacks) {
    std::ostringstream o;
    std::vector<std::string> binders;
    StackPtr cur = st;
    while (true) {
      if (auto* p = std::get_if<Push>(&cur->node)) {
        term_key_rec(o, p->head, binders);
        o << '.';
        cur = p->rest;
      } else if (auto* b = std::get_if<Bottom>(&cur->node)) {
        o << "w_" << b->name;
        break;
      } else {
        o << '?' << std::get<OpaqueTail>(cur->node).name;
        break;
      }
    }
    out += o.str() + "|";
  }
  return out;
}

std::string spec_to_string(const StackSpec& s) {
  if (std::holds_alternative<AllStacks>(s)) return "Pi";
  if (auto* p = std::get_if<PrefixAll>(&s)) {
    std::string out;
    for (const auto& t : p->prefix) out += to_string(t) + ".";
    return out + "Pi";
  }
  std::string out = "{";
  bool first = true;
  for (const auto& st : std::get<FiniteStacks>(s).stacks) {
    if (!first) out += ", ";
    first = false;
    out += to_string(st);
  }
  return out + "}";
}

bool spec_eq(const StackSpec& a, const StackSpec& b) { return spec_key(a) == spec_key(b); }

bool spec_subset(const StackSpec& a, const StackSpec& b) {
  if (std::holds_alternative<AllStacks>(b)) return true;
  if (spec_eq(a, b)) return true;
  if (auto* fa = std::get_if<FiniteStacks>(&a)) {
    return std::all_of(fa->stacks.begin(), fa->stacks.end(),
                       [&](const StackPtr& st) { return spec_matches(b, st); });
  }
  if (auto* pa = std::get_if<PrefixAll>(&a)) {
    if (auto* pb = std::get_if<PrefixAll>(&b)) {
      // Every pb-prefixed extension: a-prefix must extend b-prefix.
      if (pa->prefix.size() < pb->prefix.size()) return false;
      for (std::size_t i = 0; i < pb->prefix.size(); ++i)
        if (!alpha_eq(pa->prefix[i], pb->prefix[i])) return false;
      return true;
    }
  }
  return false;
}

bool spec_matches(const StackSpec& spec, const StackPtr& stack) {
  if (std::holds_alternative<AllStacks>(spec)) return true;
  if (auto* p = std::get_if<PrefixAll>(&spec)) {
    StackPtr cur = stack;
    for (const auto& want : p->prefix) {
      auto* push = std::get_if<Push>(&cur->node);
      if (!push || !alpha_eq(push->head, want)) return false;
      cur = push->rest;
    }
    return true;
  }
  const auto& fin = std::get<FiniteStacks>(spec);
  return std::any_of(fin.stacks.begin(), fin.stacks.end(),
                     [&](const StackPtr& st) { return alpha_eq_stack(st, stack); });
}

// ---------- Names ----------

NamePtr mk_name(std::vector<NameEntry> entries) {
  std::vector<std::pair<std::string, NameEntry>> keyed;
  keyed.reserve(entries.size());
  for (auto& e : entries) {
    std::string k = "(" + e.child->key + ";" + spec_key(e.spec) + ")";
    keyed.emplace_back(std::move(k), std::move(e));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first; }),
              keyed.end());

  auto name = std::make_shared<Name>();
  std::string key = "{";
  std::uint32_t rk = 0;
  for (auto& [k, e] : keyed) {
    key += k;
    rk = std::max(rk, e.child->rank + 1);
    name->entries.push_back(std::move(e));
  }
  key += "}";
  name->rank = rk;
  name->key = std::move(key);
  return name;
}

bool name_eq(const NamePtr& a, const NamePtr& b) { return a->key == b->key; }
bool name_lt(const NamePtr& a, const NamePtr& b) { return a->key < b->key; }

std::vector<NamePtr> dom(const NamePtr& a) {
  std::vector<NamePtr> out;
  for (const auto& e : a->entries) {
    bool seen = false;
    for (const auto& d : out) seen = seen || name_eq(d, e.child);
    if (!seen) out.push_back(e.child);
  }
  return out;
}

NamePtr mk_empty() {
  static const NamePtr empty = mk_name({});
  return empty;
}

NamePtr mk_gimel(const std::vector<NamePtr>& xs) {
  std::vector<NameEntry> entries;
  entries.reserve(xs.size());
  for (const auto& x : xs) entries.push_back({x, AllStacks{}});
  return mk_name(std::move(entries));
}

NamePtr mk_reish(std::uint64_t n) {
  static std::mutex mu;
  static std::vector<NamePtr> memo;
  std::lock_guard<std::mutex> lock(mu);
  for (std::uint64_t k = memo.size(); k <= n; ++k) {
    std::vector<NamePtr> below(memo.begin(), memo.end());
    memo.push_back(mk_gimel(below));
  }
  return memo[n];
}

NamePtr mk_hat(std::uint64_t n) {
  static std::mutex mu;
  static std::vector<NamePtr> memo;
  std::lock_guard<std::mutex> lock(mu);
  for (std::uint64_t k = memo.size(); k <= n; ++k) {
    std::vector<NameEntry> entries;
    for (std::uint64_t b = 0; b < k; ++b)
      entries.push_back({memo[b], PrefixAll{{mk_enum(b)}}});
    memo.push_back(mk_name(std::move(entries)));
  }
  return memo[n];
}

NamePtr sng(const NamePtr& a) { return mk_name({{a, AllStacks{}}}); }

NamePtr up(const NamePtr& a, const NamePtr& b) {
  return mk_name({{a, PrefixAll{{church(0)}}}, {b, PrefixAll{{church(1)}}}});
}

NamePtr op(const NamePtr& a, const NamePtr& b) {
  return up(up(sng(a), mk_reish(0)), sng(sng(b)));
}

NamePtr lift(const std::vector<std::pair<NamePtr, NamePtr>>& f) {
  std::vector<NameEntry> entries;
  entries.reserve(f.size());
  for (const auto& [c, fc] : f) entries.push_back({op(c, fc), AllStacks{}});
  return mk_name(std::move(entries));
}

NamePtr ordered_lift(const std::vector<std::uint64_t>& f) {
  std::vector<NameEntry> entries;
  for (std::uint64_t a = 0; a < f.size(); ++a)
    entries.push_back({op(mk_hat(a), mk_hat(f[a])), PrefixAll{{mk_enum(a)}}});
  return mk_name(std::move(entries));
}

NamePtr ordered_lift_succ(std::uint64_t bound) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t a = 0; a < bound; ++a) f.push_back(a + 1);
  return ordered_lift(f);
}

NamePtr lt_truth(const NamePtr& x, const NamePtr& y) {
  for (const auto& d : dom(y))
    if (name_eq(d, x)) return mk_reish(1);
  return mk_reish(0);
}

NamePtr h_lift(const std::vector<NamePtr>& xs) {
  std::vector<std::pair<NamePtr, NamePtr>> f;
  for (const auto& x : xs) {
    f.emplace_back(op(mk_reish(0), x), mk_reish(0));
    f.emplace_back(op(mk_reish(1), x), x);
  }
  return lift(f);
}

ReishOrdSegment reish_ord_segment(std::uint64_t bound) {
  ReishOrdSegment seg;
  seg.bound = bound;
  for (std::uint64_t a = 0; a < bound; ++a) seg.names.push_back(mk_reish(a));
  return seg;
}

// ---------- Universes ----------

void NameUniverse::add_closed(const NamePtr& a) {
  if (!members.insert(a).second) return;
  for (const auto& e : a->entries) add_closed(e.child);
}

bool NameUniverse::dom_closed() const {
  for (const auto& m : members)
    for (const auto& e : m->entries)
      if (!members.count(e.child)) return false;
  return true;
}

std::vector<NamePtr> NameUniverse::sorted() const {
  std::vector<NamePtr> out(members.begin(), members.end());
  std::stable_sort(out.begin(), out.end(), [](const NamePtr& a, const NamePtr& b) {
    if (a->rank != b->rank) return a->rank < b->rank;
    return a->key < b->key;
  });
  return out;
}

// ---------- Atomic falsity values ----------

std::vector<FalsityCase> falsity_atomic(AtomKind atom, const NamePtr& a, const NamePtr& b) {
  std::vector<FalsityCase> cases;
  switch (atom) {
    case AtomKind::NotEps:
      // ||a !eps b|| = { pi | (a, pi) in b }
      for (const auto& e : b->entries)
        if (name_eq(e.child, a)) cases.push_back({{}, e.spec});
      break;
    case AtomKind::Neq:
      // ||top|| when the names differ, ||bot|| when they coincide.
      if (name_eq(a, b)) cases.push_back({{}, AllStacks{}});
      break;
    case AtomKind::NotIn:
      // union over entries (c, pi) of b of t.t'.pi with t |- a sub c and
      // t' |- c sub a
      for (const auto& e : b->entries)
        cases.push_back({{{AtomKind::Sub, a, e.child}, {AtomKind::Sub, e.child, a}}, e.spec});
      break;
    case AtomKind::Sub:
      // union over entries (c, pi) of a of t.pi with t |- c notin b
      for (const auto& e : a->entries)
        cases.push_back({{{AtomKind::NotIn, e.child, b}}, e.spec});
      break;
  }
  return cases;
}

std::string atom_kind_str(AtomKind k) {
  switch (k) {
    case AtomKind::NotEps:
      return "!eps";
    case AtomKind::Neq:
      return "!=";
    case AtomKind::NotIn:
      return "!in";
    case AtomKind::Sub:
      return "sub";
  }
  return "?";
}

}  // namespace rlz
