#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rlz/term.hpp"

namespace rlz {

// ---------- Krivine abstract machine ----------
//
// Weak head reduction on processes:
//   t s * pi         >  t * s.pi            (push)
//   \u. t * s.pi     >  t[u:=s] * pi        (grab)
//   cc * t.pi        >  t * k[pi].pi        (save)
//   k[sigma] * t.pi  >  t * sigma           (restore)
// plus the comparison instruction #chi on enumeration literals:
//   #chi * nu_a.nu_b.t.s.r.pi  >  t * pi  if a < b,  s * pi  if a = b,
//                                 r * pi  if b < a.
// No rule fires anywhere else; a process with no applicable rule is stuck.

enum class StuckKind {
  NotStuck,
  Normal,    // no rule applies and refining opaque parts would not help
  OnOpaque,  // an opaque head, or an opaque tail blocking a needed pop
};

struct StepResult {
  std::optional<Process> next;  // set iff a rule fired
  StuckKind stuck = StuckKind::NotStuck;
  std::string rule;  // push | grab | save | restore | chi-lt | chi-eq | chi-gt
};

// Evaluation rules for additional special instructions can be registered on a
// Machine; only #chi ships.
using InstrRule = std::function<std::optional<Process>(const Process&)>;

struct Machine {
  std::vector<std::pair<std::string, InstrRule>> instr_rules;

  Machine();  // registers #chi

  StepResult step(const Process& p) const;

  struct Trace {
    enum class Status { ReachedNormal, StuckOnOpaque, OutOfFuel };
    std::vector<Process> steps;  // first entry is the input process
    Status status = Status::ReachedNormal;

    const Process& last() const { return steps.back(); }
    std::string render() const;  // one "head * stack" line per process
  };

  Trace reduce(const Process& p, std::uint64_t fuel) const;
};

// Convenience wrappers over a default machine.
StepResult step(const Process& p);
Machine::Trace reduce(const Process& p, std::uint64_t fuel);

// True iff the machine, run from `process`, visits the `expected` processes
// in order (as a not necessarily contiguous subsequence, up to alpha).
bool check_displayed_trace(const Process& process, const std::vector<Process>& expected,
                           std::uint64_t fuel);

std::string status_name(Machine::Trace::Status s);

}  // namespace rlz
