#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rlz/formula.hpp"
#include "rlz/machine.hpp"
#include "rlz/term.hpp"

namespace rlz {

// ---------- Goals and hypotheses ----------

struct RealizerHyp {
  std::string id;  // opaque term atom
  FormulaPtr phi;
};
struct FalsityHyp {
  std::string id;  // opaque stack tail
  FormulaPtr phi;
};
struct LemmaEntry {
  std::string id;
  TermPtr term;
  FormulaPtr phi;
};

struct GoalRealizes {
  TermPtr term;
  FormulaPtr phi;
};
struct GoalInPole {
  Process proc;
};
struct GoalInFalsity {
  StackPtr stack;
  FormulaPtr phi;
};
using GoalClaim = std::variant<GoalRealizes, GoalInPole, GoalInFalsity>;

struct Goal {
  GoalClaim claim;
  std::vector<RealizerHyp> realizer_hyps;
  std::vector<FalsityHyp> falsity_hyps;
  bool rank_induction = false;  // prove a top-level forall by rank recursion
};

struct ProveConfig {
  std::uint64_t fuel = 10000;   // machine steps per ANTI-EVAL
  int max_depth = 240;          // recursion guard
  bool rank_induction = true;   // set false to disable induction hypotheses
};

// ---------- Proof traces ----------

struct TraceNode {
  std::string rule;    // ANTI-EVAL, HYP-MATCH, IMP-INTRO, FORALL-INTRO,
                       // FALSITY, KPI, CASE-SPLIT, LEMMA, RANK-IND, VACUOUS
  std::string detail;  // instance names, hypothesis ids, step counts
  bool vacuous = false;
  std::vector<TraceNode> children;

  std::size_t size() const;
  // Rule names only, details stripped; instance-independent.
  std::string skeleton() const;
  std::string render(int indent = 0) const;
};

enum class Outcome { Accepted, Rejected, FuelOut };

struct ProofResult {
  Outcome outcome = Outcome::Rejected;
  TraceNode trace;
  std::string reject_reason;  // first unprovable leaf
};

std::string outcome_name(Outcome o);

// For FORALL-INTRO / CASE-SPLIT / RANK-IND nodes: the skeletons of all
// non-vacuous enumerated branches must agree. Returns human-readable
// violations, empty when uniform.
std::vector<std::string> uniformity_violations(const TraceNode& trace);

// ---------- Engine ----------

class Engine {
 public:
  Engine(NameUniverse universe, ProveConfig config);

  // Lemmas usable by LEMMA closings, in citation scope for the next prove().
  void set_lemmas(std::vector<LemmaEntry> lemmas);
  const NameUniverse& universe() const { return universe_; }

  ProofResult prove(const Goal& goal) const;

  // Re-derives the proof and checks the recorded trace is reproduced.
  bool replay(const Goal& goal, const ProofResult& recorded) const;

 private:
  NameUniverse universe_;
  ProveConfig config_;
  std::vector<LemmaEntry> lemmas_;

  friend struct ProofSearch;
};

// Sound syntactic checks on falsity values, shared with the tests.
bool falsity_empty(const FormulaPtr& phi, const NameUniverse& universe);
bool falsity_full(const FormulaPtr& phi, const NameUniverse& universe);
// ||phi1|| subset of ||phi2||
bool falsity_subset(const FormulaPtr& phi1, const FormulaPtr& phi2,
                    const NameUniverse& universe);

}  // namespace rlz
