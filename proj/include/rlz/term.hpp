#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace rlz {

// ---------- Terms, stacks, processes ----------
//
// Terms of the lambda_c-calculus: variables, application, abstraction, the
// control operator cc, continuation constants k[pi], special instructions
// #name, enumeration literals nu<n>, and opaque atoms used only by the
// verifier. Stacks are lists of closed terms ending in a bottom w_<name> or
// an opaque tail ?<name>. All nodes are immutable and freely shared.

struct Term;
struct Stack;
using TermPtr = std::shared_ptr<const Term>;
using StackPtr = std::shared_ptr<const Stack>;

struct Var {
  std::string name;
};
struct App {
  TermPtr fn;
  TermPtr arg;
};
struct Abs {
  std::string var;
  TermPtr body;
};
struct Cc {};
struct Kont {
  StackPtr stack;
};
struct Instr {
  std::string name;
};
struct EnumLit {
  std::uint64_t index;
};
struct OpaqueTerm {
  std::string name;
};

struct Bottom {
  std::string name;
};
struct Push {
  TermPtr head;
  StackPtr rest;
};
struct OpaqueTail {
  std::string name;
};

struct Term {
  std::variant<Var, App, Abs, Cc, Kont, Instr, EnumLit, OpaqueTerm> node;
};

struct Stack {
  std::variant<Bottom, Push, OpaqueTail> node;
};

struct Process {
  TermPtr head;
  StackPtr tail;
};

// Factories.
TermPtr mk_var(std::string name);
TermPtr mk_app(TermPtr fn, TermPtr arg);
TermPtr mk_abs(std::string var, TermPtr body);
TermPtr mk_cc();
TermPtr mk_kont(StackPtr stack);
TermPtr mk_instr(std::string name);
TermPtr mk_enum(std::uint64_t index);
TermPtr mk_opaque(std::string name);

StackPtr mk_bottom(std::string name);
StackPtr mk_push(TermPtr head, StackPtr rest);
StackPtr mk_opaque_tail(std::string name);

// Left-nested application t s1 s2 ... sn.
TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args);

inline bool is_var(const Term& t) { return std::holds_alternative<Var>(t.node); }
inline bool is_app(const Term& t) { return std::holds_alternative<App>(t.node); }
inline bool is_abs(const Term& t) { return std::holds_alternative<Abs>(t.node); }
inline bool is_cc(const Term& t) { return std::holds_alternative<Cc>(t.node); }
inline bool is_kont(const Term& t) { return std::holds_alternative<Kont>(t.node); }
inline bool is_instr(const Term& t) { return std::holds_alternative<Instr>(t.node); }
inline bool is_enum(const Term& t) { return std::holds_alternative<EnumLit>(t.node); }
inline bool is_opaque(const Term& t) { return std::holds_alternative<OpaqueTerm>(t.node); }

// Free variables (Var nodes only; opaque atoms are closed by construction).
std::set<std::string> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);

// True iff t is closed and contains no continuation constant and no opaque
// atom: the definition of membership in the set of realizers.
bool is_realizer(const TermPtr& t);

bool contains_kont(const TermPtr& t);
bool contains_opaque(const TermPtr& t);
bool stack_contains_opaque(const StackPtr& s);

// Capture-avoiding substitution body[var := value].
TermPtr substitute(const TermPtr& body, const std::string& var, const TermPtr& value);

// Equality up to renaming of bound variables.
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq_stack(const StackPtr& a, const StackPtr& b);
bool alpha_eq_process(const Process& a, const Process& b);

// Total order compatible with alpha_eq (bound variables compared by binder
// index). Used to canonicalise name entries.
int term_cmp(const TermPtr& a, const TermPtr& b);
int stack_cmp(const StackPtr& a, const StackPtr& b);

// Printing with minimal parentheses: application is left associative and an
// abstraction body extends as far right as possible. Abstractions are
// parenthesised in application and stack-element positions.
std::string to_string(const TermPtr& t);
std::string to_string(const StackPtr& s);
std::string to_string(const Process& p);

// Rewrites free variables: names found in `resolve` become the mapped term,
// remaining free variables become opaque atoms when `free_to_opaque` is set.
TermPtr resolve_free_vars(const TermPtr& t,
                          const std::vector<std::pair<std::string, TermPtr>>& resolve,
                          bool free_to_opaque);
StackPtr resolve_free_vars_stack(const StackPtr& s,
                                 const std::vector<std::pair<std::string, TermPtr>>& resolve,
                                 bool free_to_opaque);

}  // namespace rlz
