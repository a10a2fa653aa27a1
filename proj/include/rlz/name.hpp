#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rlz/term.hpp"

namespace rlz {

// ---------- Names ----------
//
// A name is a finite set of (name, stack set) pairs. Only the stack-set
// shapes the constructions actually use are representable: the full set of
// stacks, the stacks extending a fixed prefix of closed terms, and explicit
// finite lists.

struct AllStacks {};
struct PrefixAll {
  std::vector<TermPtr> prefix;  // nonempty
};
struct FiniteStacks {
  std::vector<StackPtr> stacks;
};
using StackSpec = std::variant<AllStacks, PrefixAll, FiniteStacks>;

std::string spec_key(const StackSpec& s);
std::string spec_to_string(const StackSpec& s);
bool spec_eq(const StackSpec& a, const StackSpec& b);
// True iff the set denoted by `a` is contained in the set denoted by `b`.
bool spec_subset(const StackSpec& a, const StackSpec& b);
// True iff the concrete stack lies in the set denoted by the spec. Prefix
// matching is up to alpha; an opaque tail matches the "all stacks" remainder.
bool spec_matches(const StackSpec& spec, const StackPtr& stack);

struct Name;
using NamePtr = std::shared_ptr<const Name>;

struct NameEntry {
  NamePtr child;
  StackSpec spec;
};

struct Name {
  std::vector<NameEntry> entries;  // canonical: sorted by key, deduplicated
  std::uint32_t rank = 0;          // 0 for the empty name, else 1 + max child rank
  std::string key;                 // canonical printed form; equality = key equality

  const std::string& str() const { return key; }
};

// Canonicalising constructor; the only way to build names.
NamePtr mk_name(std::vector<NameEntry> entries);

bool name_eq(const NamePtr& a, const NamePtr& b);
bool name_lt(const NamePtr& a, const NamePtr& b);

struct NameLess {
  bool operator()(const NamePtr& a, const NamePtr& b) const { return name_lt(a, b); }
};
using NameSet = std::set<NamePtr, NameLess>;

std::vector<NamePtr> dom(const NamePtr& a);
inline std::uint32_t rank(const NamePtr& a) { return a->rank; }

// ---------- Constructors ----------

NamePtr mk_empty();
NamePtr mk_gimel(const std::vector<NamePtr>& xs);     // x * Pi entries
NamePtr mk_reish(std::uint64_t n);                    // hereditary, all stacks
NamePtr mk_hat(std::uint64_t n);                      // entries (hat b, nu_b . Pi)
NamePtr sng(const NamePtr& a);
NamePtr up(const NamePtr& a, const NamePtr& b);       // church-0 / church-1 prefixes
NamePtr op(const NamePtr& a, const NamePtr& b);       // up(up(sng a, reish 0), sng (sng b))
NamePtr lift(const std::vector<std::pair<NamePtr, NamePtr>>& f);  // entries op(c, f c)
NamePtr ordered_lift_succ(std::uint64_t bound);       // entries (op(hat a, hat a+1), nu_a . Pi)
NamePtr ordered_lift(const std::vector<std::uint64_t>& f);  // f given pointwise on [0,|f|)
NamePtr lt_truth(const NamePtr& x, const NamePtr& y);  // reish 1 if x in dom(y) else reish 0
// The two-valued selector lifted over {reish 0, reish 1} x xs; pairs are
// op-encoded as the domain element.
NamePtr h_lift(const std::vector<NamePtr>& xs);

struct ReishOrdSegment {
  std::vector<NamePtr> names;  // reish 0 .. reish (bound-1)
  std::uint64_t bound = 0;
  bool class_surrogate = true;  // stands in for a proper-class quantifier range
};
ReishOrdSegment reish_ord_segment(std::uint64_t bound);

// ---------- Universes ----------

struct NameUniverse {
  NameSet members;

  // Insert a name together with everything reachable through entries.
  void add_closed(const NamePtr& a);
  bool contains(const NamePtr& a) const { return members.count(a) != 0; }
  bool dom_closed() const;
  // Stable iteration order: by (rank, key).
  std::vector<NamePtr> sorted() const;
};

// ---------- Atomic falsity values ----------

enum class AtomKind { NotEps, Neq, NotIn, Sub };

// A formula-shaped obligation on a stack-head term, stated over names only.
struct AtomObligation {
  AtomKind kind;
  NamePtr lhs, rhs;
};

// One branch of the union defining an atomic falsity value: the stack must
// start with one realizer per slot and continue with a member of `tail`.
struct FalsityCase {
  std::vector<AtomObligation> slots;
  StackSpec tail;
};

// Branches of ||a atom b||. Empty vector means the falsity value is empty.
std::vector<FalsityCase> falsity_atomic(AtomKind atom, const NamePtr& a, const NamePtr& b);

std::string atom_kind_str(AtomKind k);

}  // namespace rlz
