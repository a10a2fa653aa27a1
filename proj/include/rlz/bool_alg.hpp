#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rlz/name.hpp"
#include "rlz/term.hpp"

namespace rlz {

// ---------- Finite Boolean algebras ----------

using Elem = std::uint32_t;

struct BoolAlg {
  std::vector<std::string> names;  // element display ids
  std::vector<Elem> meet_tab, join_tab, neg_tab;
  Elem zero = 0, one = 0;

  std::size_t size() const { return names.size(); }
  Elem meet(Elem a, Elem b) const { return meet_tab[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_tab[a * size() + b]; }
  Elem neg(Elem a) const { return neg_tab[a]; }
  bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
  const std::string& name(Elem a) const { return names[a]; }
  Elem by_name(const std::string& n) const;

  // Checks every Boolean-algebra law on the full tables; throws on failure.
  void validate() const;

  // Powerset algebra on k atoms. Elements are bitmasks; display names are
  // "0", "1", atoms "a1".."ak", other sets concatenations like "a1a2".
  static BoolAlg powerset(unsigned atoms);
};

struct TauContext {
  BoolAlg alg;
  std::map<std::string, Elem> bottom_map;

  // Validates that some bottom maps to one.
  TauContext(BoolAlg a, std::map<std::string, Elem> bottoms);

  Elem bottom(const std::string& ident) const;
  bool surjective_onto_carrier() const;

  // One bottom per element, named after the element, plus aliases "zero" and
  // "one".
  static TauContext standard(BoolAlg a);
};

// Line-oriented algebra input: either a single "atoms n" header, or explicit
// tables "elem a; zero a; one b; meet a b = c; join a b = c; neg a = b;
// bottom w = a;" (newlines and ';' both separate statements). Returns the
// standard context unless the file declares bottoms.
TauContext parse_algebra_file(const std::string& content);
// "atomsN" shorthand or a path readable from disk.
TauContext load_algebra(const std::string& spec);

// ---------- The tau homomorphism ----------

struct TauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Elem tau(const TermPtr& t, const TauContext& ctx);
Elem tau(const StackPtr& s, const TauContext& ctx);
Elem tau(const Process& p, const TauContext& ctx);

struct PoleVerdict {
  bool in_pole;
  Elem witness_value;
};

PoleVerdict pole_decide(const Process& p, const TauContext& ctx);

// p >= q in the evaluation preorder of the induced algebra: tau(p) <= tau(q).
bool preorder_decide(const Process& p, const Process& q, const TauContext& ctx);

// sup over the denotation of a stack-set spec of tau.
Elem tau_sup(const StackSpec& spec, const TauContext& ctx);

}  // namespace rlz
