#pragma once

#include "rlz/bool_alg.hpp"
#include "rlz/formula.hpp"

namespace rlz {

// F(phi): the supremum of tau over ||phi|| in the algebra induced by a
// Boolean algebra. A closed term realizes phi iff its tau value meets F(phi)
// to zero; a formula is realized by a realizer iff F(phi) = 0.
//
// Unbounded universal quantifiers range over the supplied universe. Formulas
// touching hat machinery are rejected (tau is undefined on enumeration
// literals). All names in phi must belong to the (dom-closed) universe.
Elem forcing_value(const FormulaPtr& phi, const NameUniverse& universe, const TauContext& ctx);

}  // namespace rlz
