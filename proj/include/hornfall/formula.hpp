#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hornfall {

using Var = std::uint32_t;

// One Horn clause in canonical form: at most one positive literal,
// negatives strictly increasing, positive never among the negatives.
// Both absent/empty is the empty clause (always false).
struct HornClause {
  std::optional<Var> positive;
  std::vector<Var> negatives;

  bool operator==(const HornClause&) const = default;
};

// Validates and canonicalizes. Throws OutOfRange (id 0), DuplicateVariable
// (repeat among negatives, or positive also negative). Upper-bound checks
// against n happen when the clause is added to a formula.
HornClause make_clause(std::optional<Var> positive, std::vector<Var> negatives);

// Builds a clause from signed literals (+v positive, -v negative).
// Throws HornViolation if more than one positive literal is requested.
HornClause clause_from_literals(const std::vector<long long>& literals);

// Ensemble parameters (d1, ..., dk), clauses per variable by length.
struct DensityVector {
  std::vector<double> d;  // d[0] is d1

  int k() const { return static_cast<int>(d.size()); }
  double d1() const { return d[0]; }

  // Throws DomainError unless k >= 1, 0 <= d1 < 1, and every dj >= 0.
  static DensityVector of(std::vector<double> values);
};

// Clause database over variables 1..n. Storage is flat (one positive slot
// and a CSR run of negatives per clause) so solving touches contiguous
// memory; clauses are a multiset and keep duplicates.
class HornFormula {
 public:
  explicit HornFormula(Var n);

  // Throws OutOfRange if any referenced variable exceeds n.
  void add(const HornClause& clause);

  Var n() const { return n_; }
  std::size_t clause_count() const { return positive_.size(); }
  // Total literal occurrences; the solver's runtime bound is linear in this.
  std::size_t literal_count() const;

  // Positive variable of clause i, or 0 when the clause has none.
  Var positive_raw(std::size_t i) const { return positive_[i]; }
  std::span<const Var> negatives(std::size_t i) const {
    return {neg_flat_.data() + neg_begin_[i],
            neg_begin_[i + 1] - neg_begin_[i]};
  }

  HornClause clause(std::size_t i) const;

  // Multiset equality of clauses (order-insensitive); for tests and
  // round-trip checks, not a hot path.
  bool same_clauses(const HornFormula& other) const;

 private:
  Var n_;
  std::vector<Var> positive_;             // 0 = no positive literal
  std::vector<std::uint32_t> neg_begin_;  // size clause_count()+1
  std::vector<Var> neg_flat_;
};

// A generated draw from the random ensemble: the formula, the seed that
// produced it, and the realized clause counts per length (counts[0] is the
// number of positive units, counts[j-1] the number of length-j clauses;
// the single negative unit on variable 1 is not included in counts).
struct EnsembleSample {
  HornFormula formula;
  std::uint64_t seed;
  std::vector<std::uint64_t> counts;
};

}  // namespace hornfall
