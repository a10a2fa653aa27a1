#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rlz/name.hpp"

namespace rlz {

// ---------- Name expressions ----------
//
// A name position in a formula holds either a bound variable, a literal
// name, an op-pair op(e1, e2), or the application of a successor lift
// (ordered for hat names, plain for reish names) to a name expression.
// Applications and pairs evaluate once their arguments are literal.

struct NameExpr;
using NameExprPtr = std::shared_ptr<const NameExpr>;

struct NVar {
  std::string name;
};
struct NLit {
  NamePtr value;
};
struct NOp {
  NameExprPtr l, r;
};
enum class LiftFlavor { Hat, Reish };
struct NLiftApp {
  LiftFlavor flavor;
  std::uint64_t bound;  // domain truncation: indices < bound
  NameExprPtr arg;
};

struct NameExpr {
  std::variant<NVar, NLit, NOp, NLiftApp> node;
};

NameExprPtr ne_var(std::string name);
NameExprPtr ne_lit(NamePtr value);
NameExprPtr ne_op(NameExprPtr l, NameExprPtr r);
NameExprPtr ne_lift(LiftFlavor flavor, std::uint64_t bound, NameExprPtr arg);

std::string to_string(const NameExprPtr& e);

// ---------- Formulas ----------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct FTop {};
struct FBot {};
struct FAtom {
  AtomKind kind;
  NameExprPtr lhs, rhs;
};
struct FImp {
  FormulaPtr hyp, concl;
};
struct FForall {
  std::string var;
  FormulaPtr body;
};
struct FForallGimel {
  std::string var;
  std::vector<NamePtr> range;
  FormulaPtr body;
};
struct FForallHat {
  std::string var;
  std::uint64_t bound;
  FormulaPtr body;
};
struct FForallROrd {
  std::string var;
  std::uint64_t bound;
  FormulaPtr body;
};

struct Formula {
  std::variant<FTop, FBot, FAtom, FImp, FForall, FForallGimel, FForallHat, FForallROrd> node;
};

FormulaPtr f_top();
FormulaPtr f_bot();
FormulaPtr f_atom(AtomKind kind, NameExprPtr lhs, NameExprPtr rhs);
FormulaPtr f_imp(FormulaPtr hyp, FormulaPtr concl);
FormulaPtr f_forall(std::string var, FormulaPtr body);
FormulaPtr f_forall_gimel(std::string var, std::vector<NamePtr> range, FormulaPtr body);
FormulaPtr f_forall_hat(std::string var, std::uint64_t bound, FormulaPtr body);
FormulaPtr f_forall_rord(std::string var, std::uint64_t bound, FormulaPtr body);

std::string to_string(const FormulaPtr& f);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);  // up to bound-variable names

std::vector<std::string> formula_free_vars(const FormulaPtr& f);
bool formula_closed(const FormulaPtr& f);

// Substitute a literal name for a free variable.
FormulaPtr subst_name(const FormulaPtr& f, const std::string& var, const NamePtr& a);

// Evaluate op-pairs and lift applications inside a closed formula. An atom
// containing a hat-lift application outside its domain has empty falsity and
// becomes top; one containing a reish-lift application outside its domain has
// full falsity and becomes bot. Throws if a free variable remains.
FormulaPtr resolve(const FormulaPtr& f);
bool is_resolved(const FormulaPtr& f);

// All literal names occurring in a formula.
std::vector<NamePtr> formula_names(const FormulaPtr& f);
// True iff the formula mentions hat machinery (hat quantifier, hat lift, or
// a name whose entries use enumeration-literal prefixes).
bool mentions_hat(const FormulaPtr& f);

// ---------- Sugared formulas ----------

struct Sugared;
using SugaredPtr = std::shared_ptr<const Sugared>;

enum class SKind {
  // primitives
  Top, Bot, NotEps, Neq, NotIn, Sub, Imp, Forall, ForallGimel, ForallHat, ForallROrd,
  // abbreviations
  Eps, In, Eq, SimEq, And, Or, Exists, ForallEpsIn, ExistsEpsIn, SubEps,
};

struct Sugared {
  SKind kind;
  NameExprPtr a, b;        // atoms and eps-bounded quantifier ranges
  SugaredPtr l, r;         // connective children
  std::string var;         // quantifiers
  std::vector<NamePtr> range;
  std::uint64_t bound = 0;
};

SugaredPtr s_node(SKind kind);
SugaredPtr s_atom(SKind kind, NameExprPtr a, NameExprPtr b);
SugaredPtr s_conn(SKind kind, SugaredPtr l, SugaredPtr r);
SugaredPtr s_quant(SKind kind, std::string var, SugaredPtr body);
SugaredPtr s_quant_eps(SKind kind, std::string var, NameExprPtr range, SugaredPtr body);

// Eliminates every abbreviation into the primitive connectives.
FormulaPtr desugar(const SugaredPtr& s);

// ---------- Schemas ----------

namespace schema {
// ExtFun(f, A): extensionality of the function f over the listed domain.
SugaredPtr ext_fun(NameExprPtr f, std::vector<NamePtr> range);
// eps-Fun(f): single-valuedness with strict equality.
SugaredPtr eps_fun(NameExprPtr f);
// eps-Surj(f, a, b): f is an eps-surjection from a onto b.
SugaredPtr eps_surj(NameExprPtr f, NameExprPtr a, NameExprPtr b);
// NEAC: every eps-relation contains an eps-function with the same domain.
SugaredPtr neac();
}  // namespace schema

// ---------- One-level falsity decomposition ----------

struct ShapeEmpty {};  // ||top||
struct ShapeFull {};   // ||bot||
struct ShapeImp {
  FormulaPtr hyp, tail;
};
struct ShapeFamily {
  struct Instance {
    NamePtr name;
    std::optional<std::uint64_t> nu_index;  // hat families prepend nu_index
    FormulaPtr inst;
  };
  std::vector<Instance> instances;
  bool class_surrogate = false;  // reish-ordinal truncation
};
struct ShapeAtom {
  struct Case {
    std::vector<FormulaPtr> slots;
    StackSpec tail;
  };
  std::vector<Case> cases;
};
using FalsityShape = std::variant<ShapeEmpty, ShapeFull, ShapeImp, ShapeFamily, ShapeAtom>;

// The one-level decomposition of ||f||. Unbounded quantifiers enumerate the
// supplied universe; passing none for a formula that needs one throws.
FalsityShape falsity_shape(const FormulaPtr& f, const NameUniverse* universe);

// ---------- Parsing ----------

// Formula concrete syntax (primitives and sugar):
//   top, bot, e !eps e, e != e, e !in e, e sub e, A -> B,
//   all x. A, all x^gimel{...}. A, all x^hat(n). A, all x^rord(n). A,
//   e eps e, e in e, e = e, e ~= e, A /\ B, A \/ B, ex x. A,
//   all x eps e. A, ex x eps e. A, e sub_eps e,
//   extfun(e, {names}), efun(e), esurj(e, e, e), neac
// Name expressions:
//   x, reish n, hat n, gimel{e, ...}, sng e, up e e, op e e,
//   lift{e -> e, ...}, olift succ n, ltt e e, rsucc(n) e, hsucc(n) e
SugaredPtr parse_sugared(const std::string& text);
FormulaPtr parse_formula(const std::string& text);  // parse_sugared + desugar
NameExprPtr parse_name_expr(const std::string& text);
NamePtr parse_name(const std::string& text);  // closed name expressions only

}  // namespace rlz
