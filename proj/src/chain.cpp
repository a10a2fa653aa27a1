#include "rlz/chain.hpp"

#include <stdexcept>

namespace rlz {

namespace {

// Depth-first search for an antichain of the requested size below the given
// context value. Elements are tried in carrier order, so the first hit is
// lexicographically least. `need_nonzero_with_c` is the antichain condition
// relativised to c: members must meet c to a nonzero value and meet each
// other (under c) to zero.
bool find_antichain(const BoolAlg& B, Elem c, std::uint64_t size, Elem start,
                    std::vector<Elem>& acc) {
  if (acc.size() == size) return true;
  for (Elem x = start; x < B.size(); ++x) {
    if (B.meet(c, x) == B.zero) continue;
    bool ok = true;
    for (Elem y : acc)
      if (B.meet(B.meet(c, x), B.meet(c, y)) != B.zero) {
        ok = false;
        break;
      }
    if (!ok) continue;
    acc.push_back(x);
    if (find_antichain(B, c, size, x + 1, acc)) return true;
    acc.pop_back();
  }
  return false;
}

}  // namespace

BaCcResult ba_delta_cc(const BoolAlg& ba, std::uint64_t delta) {
  if (delta < 2) throw std::runtime_error("delta-cc: delta must be at least 2");
  std::vector<Elem> acc;
  if (find_antichain(ba, ba.one, delta, 0, acc)) return {false, acc};
  return {true, std::nullopt};
}

AlgebraCcResult algebra_delta_chain_condition(const TauContext& ctx, std::uint64_t delta) {
  if (delta < 2) throw std::runtime_error("chain condition: delta must be at least 2");
  if (!ctx.surjective_onto_carrier())
    throw std::runtime_error(
        "chain condition: the quotient decision needs bottoms covering the carrier");
  const BoolAlg& B = ctx.alg;
  // More distinct values than the carrier forces a repetition; the condition
  // then holds for that sequence, so only delta <= |carrier| can fail.
  if (delta > B.size()) return {true, std::nullopt, std::nullopt};
  for (Elem c = 0; c < B.size(); ++c) {
    std::vector<Elem> acc;
    if (find_antichain(B, c, delta, 0, acc)) return {false, c, acc};
  }
  return {true, std::nullopt, std::nullopt};
}

AlgebraCcResult uniform_delta_chain_condition(const TauContext& ctx, std::uint64_t delta) {
  if (delta < 2) throw std::runtime_error("chain condition: delta must be at least 2");
  if (!ctx.surjective_onto_carrier())
    throw std::runtime_error(
        "chain condition: the quotient decision needs bottoms covering the carrier");
  const BoolAlg& B = ctx.alg;
  if (delta > B.size()) return {true, std::nullopt, std::nullopt};
  // A set A of terms violates the uniform condition iff, writing c for
  // tau(t) /\ tau(pi), every unordered pair {a, b} of distinct members has
  // c /\ tau(a) /\ tau(b) = 0 in both argument orders while c /\ tau(a) != 0
  // for every a.
  for (Elem c = 0; c < B.size(); ++c) {
    std::vector<Elem> acc;
    // both orders checked explicitly even though meet commutes
    struct Search {
      const BoolAlg& B;
      Elem c;
      std::uint64_t size;
      bool run(Elem start, std::vector<Elem>& acc) {
        if (acc.size() == size) return true;
        for (Elem x = start; x < B.size(); ++x) {
          if (B.meet(c, x) == B.zero) continue;
          bool ok = true;
          for (Elem y : acc) {
            Elem xy = B.meet(B.meet(c, x), y);
            Elem yx = B.meet(B.meet(c, y), x);
            if (xy != B.zero || yx != B.zero) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          acc.push_back(x);
          if (run(x + 1, acc)) return true;
          acc.pop_back();
        }
        return false;
      }
    } search{B, c, delta};
    if (search.run(0, acc)) return {false, c, acc};
  }
  return {true, std::nullopt, std::nullopt};
}

}  // namespace rlz
