#pragma once

#include <cstdint>
#include <vector>

#include "hornfall/formula.hpp"

namespace hornfall {

// Outcome of positive unit propagation to fixpoint.
struct SolveResult {
  bool satisfiable;
  std::vector<Var> backbone;  // variables forced true, ascending
  std::size_t backbone_size;  // == backbone.size()
  std::uint64_t steps;        // propagation rounds (variables dequeued)
};

// Decides satisfiability by counter-based positive unit propagation.
// The backbone is the least fixpoint of "positive literal implied", so it
// is independent of propagation order. UNSAT exactly when some clause
// with no positive literal has all its variables in the backbone (for
// ensemble formulas: when variable 1 is implied). Runs in time linear in
// literal_count().
SolveResult solve(const HornFormula& f);

// Same fixpoint, but pending variables are drawn in an order scrambled by
// order_seed; exists to exercise order independence in tests.
SolveResult solve_shuffled(const HornFormula& f, std::uint64_t order_seed);

// backbone_size / n.
double backbone_fraction(const HornFormula& f);

}  // namespace hornfall
