#pragma once

#include <cstdint>

#include "hornfall/formula.hpp"

namespace hornfall {

// Draws one formula from the random ensemble over n variables:
//   - the negative unit on variable 1;
//   - round(d1*n) distinct positive units, uniform without replacement
//     from {2..n};
//   - for each j in 2..k, round(dj*n) clauses drawn uniformly and
//     independently (with replacement across draws) from the j*C(n,j)
//     Horn clauses with j distinct variables and one positive literal.
// Rounding is to nearest, ties to even. Deterministic given seed.
// Throws NTooSmall (n < k or n < 1), DensityTooHigh (round(d1*n) > n-1).
EnsembleSample sample_ensemble(Var n, const DensityVector& dv,
                               std::uint64_t seed);

// round-to-nearest-even of x, as used for the clause count targets.
std::uint64_t round_count(double x);

}  // namespace hornfall
