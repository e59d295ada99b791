#pragma once

#include <iosfwd>
#include <string>

#include "hornfall/formula.hpp"

namespace hornfall {

// Text format ("hcnf"), DIMACS-like:
//   c <comment>
//   p hcnf <n> <m>
//   <lit> ... <lit> 0        one clause per line; +v positive, -v negative
// At most one positive literal per clause; m must match the clause count.
// Throws SyntaxError (with line and column) on malformed input and
// NonHornClause when a clause carries two positive literals.
HornFormula parse_formula(std::istream& in);
HornFormula parse_formula(const std::string& text);

// Canonical serialization: header, then one clause per line, positive
// literal first (when present) followed by negatives ascending. Parsing
// the output reproduces the formula exactly, and equal formulas from the
// same generation order serialize byte-identically.
void serialize_formula(const HornFormula& f, std::ostream& out);
std::string serialize_formula(const HornFormula& f);

}  // namespace hornfall
