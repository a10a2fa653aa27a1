#include "rlz/machine.hpp"

#include <sstream>

namespace rlz {

namespace {

// Pops the first n entries of a stack; fails if a bottom or opaque tail is
// reached first. Second member tells whether the failure was an opaque tail.
std::pair<std::optional<std::vector<TermPtr>>, bool> pop_n(const StackPtr& s, std::size_t n,
                                                           StackPtr* rest) {
  std::vector<TermPtr> out;
  StackPtr cur = s;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto* p = std::get_if<Push>(&cur->node)) {
      out.push_back(p->head);
      cur = p->rest;
    } else {
      return {std::nullopt, std::holds_alternative<OpaqueTail>(cur->node)};
    }
  }
  *rest = cur;
  return {out, false};
}

std::optional<Process> chi_rule(const Process& p) {
  StackPtr rest;
  auto [args, opaque] = pop_n(p.tail, 5, &rest);
  if (!args) return std::nullopt;
  auto* a = std::get_if<EnumLit>(&(*args)[0]->node);
  auto* b = std::get_if<EnumLit>(&(*args)[1]->node);
  if (!a || !b) return std::nullopt;
  TermPtr pick = a->index < b->index ? (*args)[2] : a->index == b->index ? (*args)[3] : (*args)[4];
  return Process{pick, rest};
}

}  // namespace

Machine::Machine() { instr_rules.emplace_back("chi", chi_rule); }

StepResult Machine::step(const Process& p) const {
  const Term& head = *p.head;

  if (auto* a = std::get_if<App>(&head.node)) {
    return {Process{a->fn, mk_push(a->arg, p.tail)}, StuckKind::NotStuck, "push"};
  }

  if (auto* l = std::get_if<Abs>(&head.node)) {
    if (auto* push = std::get_if<Push>(&p.tail->node))
      return {Process{substitute(l->body, l->var, push->head), push->rest}, StuckKind::NotStuck,
              "grab"};
    return {std::nullopt,
            std::holds_alternative<OpaqueTail>(p.tail->node) ? StuckKind::OnOpaque
                                                             : StuckKind::Normal,
            ""};
  }

  if (std::holds_alternative<Cc>(head.node)) {
    if (auto* push = std::get_if<Push>(&p.tail->node))
      return {Process{push->head, mk_push(mk_kont(push->rest), push->rest)}, StuckKind::NotStuck,
              "save"};
    return {std::nullopt,
            std::holds_alternative<OpaqueTail>(p.tail->node) ? StuckKind::OnOpaque
                                                             : StuckKind::Normal,
            ""};
  }

  if (auto* k = std::get_if<Kont>(&head.node)) {
    if (auto* push = std::get_if<Push>(&p.tail->node))
      return {Process{push->head, k->stack}, StuckKind::NotStuck, "restore"};
    return {std::nullopt,
            std::holds_alternative<OpaqueTail>(p.tail->node) ? StuckKind::OnOpaque
                                                             : StuckKind::Normal,
            ""};
  }

  if (auto* i = std::get_if<Instr>(&head.node)) {
    for (const auto& [name, rule] : instr_rules) {
      if (name != i->name) continue;
      if (auto next = rule(p)) {
        std::string label = name;
        if (name == "chi") {
          StackPtr rest;
          auto [args, op] = pop_n(p.tail, 5, &rest);
          auto a = std::get<EnumLit>((*args)[0]->node).index;
          auto b = std::get<EnumLit>((*args)[1]->node).index;
          label = a < b ? "chi-lt" : a == b ? "chi-eq" : "chi-gt";
        }
        return {*next, StuckKind::NotStuck, label};
      }
      // The instruction has a rule but it does not apply here. If the rule
      // was starved by an opaque tail, refinement could enable it.
      if (name == "chi") {
        StackPtr rest;
        auto [args, opaque] = pop_n(p.tail, 5, &rest);
        if (!args && opaque) return {std::nullopt, StuckKind::OnOpaque, ""};
      }
      return {std::nullopt, StuckKind::Normal, ""};
    }
    return {std::nullopt, StuckKind::Normal, ""};
  }

  if (std::holds_alternative<OpaqueTerm>(head.node))
    return {std::nullopt, StuckKind::OnOpaque, ""};

  // EnumLit or a (would-be) free variable: no rule.
  return {std::nullopt, StuckKind::Normal, ""};
}

Machine::Trace Machine::reduce(const Process& p, std::uint64_t fuel) const {
  Trace tr;
  tr.steps.push_back(p);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    StepResult r = step(tr.steps.back());
    if (!r.next) {
      tr.status = r.stuck == StuckKind::OnOpaque ? Trace::Status::StuckOnOpaque
                                                 : Trace::Status::ReachedNormal;
      return tr;
    }
    tr.steps.push_back(*r.next);
  }
  StepResult r = step(tr.steps.back());
  if (!r.next) {
    tr.status = r.stuck == StuckKind::OnOpaque ? Trace::Status::StuckOnOpaque
                                               : Trace::Status::ReachedNormal;
  } else {
    tr.status = Trace::Status::OutOfFuel;
  }
  return tr;
}

std::string Machine::Trace::render() const {
  std::ostringstream out;
  for (const auto& p : steps) out << to_string(p) << '\n';
  return out.str();
}

StepResult step(const Process& p) {
  static const Machine m;
  return m.step(p);
}

Machine::Trace reduce(const Process& p, std::uint64_t fuel) {
  static const Machine m;
  return m.reduce(p, fuel);
}

bool check_displayed_trace(const Process& process, const std::vector<Process>& expected,
                           std::uint64_t fuel) {
  if (expected.empty()) return false;
  Machine::Trace tr = reduce(process, fuel);
  std::size_t want = 0;
  for (const auto& p : tr.steps) {
    if (want < expected.size() && alpha_eq_process(p, expected[want])) ++want;
  }
  return want == expected.size();
}

std::string status_name(Machine::Trace::Status s) {
  switch (s) {
    case Machine::Trace::Status::ReachedNormal:
      return "reached-normal";
    case Machine::Trace::Status::StuckOnOpaque:
      return "stuck-on-opaque";
    case Machine::Trace::Status::OutOfFuel:
      return "out-of-fuel";
  }
  return "?";
}

}  // namespace rlz
