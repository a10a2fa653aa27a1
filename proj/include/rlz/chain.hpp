#pragma once

#include <optional>

#include "rlz/bool_alg.hpp"

namespace rlz {

// ---------- Chain conditions ----------

// Boolean delta-chain condition: every antichain (pairwise-meet-zero set of
// nonzero elements) has cardinality strictly less than delta. On failure the
// witness is the lexicographically first antichain of size delta.
struct BaCcResult {
  bool holds;
  std::optional<std::vector<Elem>> antichain;
};
BaCcResult ba_delta_cc(const BoolAlg& ba, std::uint64_t delta);

// The delta-chain condition of the induced realizability algebra, decided on
// the tau quotient: search a context value c = tau(t) /\ tau(pi) and distinct
// carrier elements b_0..b_{delta-1} with c /\ b_i /\ b_j = 0 for i != j and
// c /\ b_i != 0 for all i. Repetition-carrying sequences satisfy the
// condition outright (a repeated value meets itself), hence the search over
// distinct elements is complete. Requires tau to be surjective onto the
// carrier via the declared bottoms.
struct AlgebraCcResult {
  bool holds;
  std::optional<Elem> context;           // c on failure
  std::optional<std::vector<Elem>> seq;  // the witness sequence on failure
};
AlgebraCcResult algebra_delta_chain_condition(const TauContext& ctx, std::uint64_t delta);

// The uniform variant: quantifies over sets of at least delta terms with the
// pole condition required in both argument orders. The induced algebra
// satisfies the symmetric property (tau of a stack is a meet), so this agrees
// with the ordered condition; the check is performed independently.
AlgebraCcResult uniform_delta_chain_condition(const TauContext& ctx, std::uint64_t delta);

}  // namespace rlz
