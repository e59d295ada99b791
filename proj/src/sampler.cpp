#include "hornfall/sampler.hpp"

#include <cfenv>
#include <cmath>
#include <string>

#include "hornfall/errors.hpp"
#include "hornfall/rng.hpp"

namespace hornfall {

std::uint64_t round_count(double x) {
  // nearbyint under the default rounding mode is round-to-nearest,
  // ties to even.
  return static_cast<std::uint64_t>(std::nearbyint(x));
}

EnsembleSample sample_ensemble(Var n, const DensityVector& dv,
                               std::uint64_t seed) {
  const int k = dv.k();
  if (n < 1 || n < static_cast<Var>(k)) {
    throw NTooSmall("n=" + std::to_string(n) + " below k=" +
                    std::to_string(k));
  }
  const std::uint64_t unit_count = round_count(dv.d1() * n);
  if (unit_count > n - 1) {
    throw DensityTooHigh("round(d1*n)=" + std::to_string(unit_count) +
                         " exceeds n-1=" + std::to_string(n - 1));
  }

  Xoshiro256ss rng(seed);
  HornFormula f(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(k), 0);

  // The single negative unit.
  f.add(HornClause{std::nullopt, {1}});

  // Positive units: a uniform subset of {2..n}, one unit clause each.
  if (unit_count > 0) {
    auto units = sample_subset(2, n, static_cast<std::uint32_t>(unit_count),
                               rng);
    for (Var v : units) f.add(HornClause{v, {}});
  }
  counts[0] = unit_count;

  // Length-j clauses: uniform j-subset of variables (Floyd), then a
  // uniform choice of which member is the positive literal; this is exactly
  // uniform over the j*C(n,j) candidate clauses. Draws are independent, so
  // duplicates may occur and are kept.
  HornClause c;
  for (int j = 2; j <= k; ++j) {
    const std::uint64_t target = round_count(dv.d[j - 1] * n);
    counts[j - 1] = target;
    for (std::uint64_t i = 0; i < target; ++i) {
      auto vars = sample_subset(1, n, static_cast<std::uint32_t>(j), rng);
      const std::size_t pos_at = rng.below(static_cast<std::uint64_t>(j));
      c.positive = vars[pos_at];
      c.negatives.clear();
      for (std::size_t idx = 0; idx < vars.size(); ++idx) {
        if (idx != pos_at) c.negatives.push_back(vars[idx]);
      }
      f.add(c);
    }
  }

  return EnsembleSample{std::move(f), seed, std::move(counts)};
}

}  // namespace hornfall
