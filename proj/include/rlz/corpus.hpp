#pragma once

#include <string>
#include <vector>

#include "rlz/verifier.hpp"

namespace rlz {

// ---------- Corpus files ----------
//
// Line-oriented goal blocks:
//   goal <id> expect accept|reject
//   universe <name-expr>[, <name-expr>]*
//   hyp realizer <id> : <formula>
//   hyp falsity <id> : <formula>
//   claim realizes <term> : <formula>
//   claim inpole <term> * <stack>
//   claim infalsity <stack> : <formula>
//   using lemma <id>[, <id>]*
//   bound <n>
//   mode rank-ind
//   check uniform
// '#' starts a comment. Free identifiers in claim terms resolve to the named
// combinators or to declared realizer hypotheses.

struct CorpusGoal {
  std::string id;
  bool expect_accept = true;
  Goal goal;
  NameUniverse universe;
  std::vector<std::string> using_lemmas;
  std::uint64_t bound = 0;  // recorded truncation bound, 0 = none
  bool check_uniform = false;
};

struct GoalReport {
  std::string id;
  Outcome outcome;
  bool pass = false;
  std::size_t steps = 0;
  std::string note;
  ProofResult result;
};

struct CorpusReport {
  std::vector<GoalReport> goals;
  bool all_pass = true;
  std::string render() const;  // one "<id> PASS|FAIL|FUEL <steps>" line per goal
};

std::vector<CorpusGoal> parse_corpus(const std::string& content);
std::vector<CorpusGoal> load_corpus(const std::string& path);

// Runs the goals in order; accepted expect-accept realizes-goals become
// citable lemmas for later goals. When trace_dir is nonempty, one
// "<id>.trace" file is written per goal.
CorpusReport verify_corpus(const std::vector<CorpusGoal>& goals, const ProveConfig& config,
                           const std::string& trace_dir = "");

}  // namespace rlz
