#include <algorithm>
#include <array>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "hornfall/errors.hpp"
#include "hornfall/formula.hpp"
#include "hornfall/formula_io.hpp"
#include "hornfall/rng.hpp"
#include "hornfall/sampler.hpp"

using namespace hornfall;

TEST_CASE("clause construction canonicalizes and validates") {
  const HornClause unit = make_clause(3, {});
  CHECK(unit.positive == 3u);
  CHECK(unit.negatives.empty());

  const HornClause c = make_clause(1, {3, 2});
  CHECK(c.positive == 1u);
  CHECK(c.negatives == std::vector<Var>{2, 3});

  CHECK_THROWS_AS(make_clause(2, {2}), DuplicateVariable);
  CHECK_THROWS_AS(make_clause(std::nullopt, {4, 4}), DuplicateVariable);
  CHECK_THROWS_AS(make_clause(0, {}), OutOfRange);
  CHECK_THROWS_AS(make_clause(std::nullopt, {1, 0}), OutOfRange);
}

TEST_CASE("clause_from_literals keeps the Horn property") {
  const HornClause c = clause_from_literals({-2, 1, -3});
  CHECK(c.positive == 1u);
  CHECK(c.negatives == std::vector<Var>{2, 3});

  const HornClause neg = clause_from_literals({-4, -2});
  CHECK_FALSE(neg.positive.has_value());
  CHECK(neg.negatives == std::vector<Var>{2, 4});

  CHECK_THROWS_AS(clause_from_literals({1, 2}), HornViolation);
  CHECK_THROWS_AS(clause_from_literals({0}), OutOfRange);
}

TEST_CASE("formula bounds-checks added clauses") {
  HornFormula f(3);
  f.add(make_clause(std::nullopt, {1}));
  CHECK_THROWS_AS(f.add(make_clause(4, {})), OutOfRange);
  CHECK_THROWS_AS(f.add(make_clause(1, {2, 5})), OutOfRange);
  CHECK(f.clause_count() == 1);
  CHECK(f.n() == 3);
}

TEST_CASE("formula keeps duplicates and reports literal totals") {
  HornFormula f(4);
  f.add(make_clause(1, {2, 3}));
  f.add(make_clause(1, {2, 3}));
  f.add(make_clause(4, {}));
  CHECK(f.clause_count() == 3);
  CHECK(f.literal_count() == 7);
  CHECK(f.clause(0) == f.clause(1));

  HornFormula g(4);
  g.add(make_clause(4, {}));
  g.add(make_clause(1, {2, 3}));
  g.add(make_clause(1, {2, 3}));
  CHECK(f.same_clauses(g));

  HornFormula h(4);
  h.add(make_clause(4, {}));
  h.add(make_clause(1, {2, 3}));
  CHECK_FALSE(f.same_clauses(h));
}

TEST_CASE("density vector validation") {
  CHECK_THROWS_AS(DensityVector::of({}), DomainError);
  CHECK_THROWS_AS(DensityVector::of({1.0}), DomainError);
  CHECK_THROWS_AS(DensityVector::of({-0.1}), DomainError);
  CHECK_THROWS_AS(DensityVector::of({0.1, -1.0}), DomainError);
  CHECK(DensityVector::of({0.5, 2.0}).k() == 2);
  CHECK(DensityVector::of({0.0}).d1() == 0.0);
}

TEST_CASE("count targets round half to even") {
  CHECK(round_count(0.0) == 0);
  CHECK(round_count(0.49) == 0);
  CHECK(round_count(0.5) == 0);
  CHECK(round_count(1.5) == 2);
  CHECK(round_count(2.5) == 2);
  CHECK(round_count(3.5) == 4);
  CHECK(round_count(2.51) == 3);
}

TEST_CASE("empty ensemble is just the negative unit") {
  const EnsembleSample s = sample_ensemble(10, DensityVector::of({0.0}), 5);
  CHECK(s.formula.n() == 10);
  REQUIRE(s.formula.clause_count() == 1);
  CHECK(s.formula.positive_raw(0) == 0);
  REQUIRE(s.formula.negatives(0).size() == 1);
  CHECK(s.formula.negatives(0)[0] == 1);
  CHECK(s.counts == std::vector<std::uint64_t>{0});
  CHECK(s.seed == 5);
}

TEST_CASE("positive units are distinct and avoid variable 1") {
  const EnsembleSample s =
      sample_ensemble(10, DensityVector::of({0.5, 0.0, 0.0}), 7);
  CHECK(s.counts == std::vector<std::uint64_t>{5, 0, 0});
  REQUIRE(s.formula.clause_count() == 6);
  std::vector<Var> units;
  for (std::size_t i = 1; i < s.formula.clause_count(); ++i) {
    const HornClause c = s.formula.clause(i);
    REQUIRE(c.positive.has_value());
    CHECK(c.negatives.empty());
    CHECK(*c.positive >= 2);
    units.push_back(*c.positive);
  }
  std::sort(units.begin(), units.end());
  CHECK(std::adjacent_find(units.begin(), units.end()) == units.end());
}

TEST_CASE("realized counts equal rounded targets at scale") {
  const EnsembleSample s =
      sample_ensemble(10000, DensityVector::of({0.1, 0.0, 3.0}), 42);
  CHECK(s.counts == std::vector<std::uint64_t>{1000, 0, 30000});
  CHECK(s.formula.clause_count() == 1 + 1000 + 30000);
}

TEST_CASE("long clauses carry j distinct variables and one positive") {
  const EnsembleSample s =
      sample_ensemble(10, DensityVector::of({0.0, 1.0, 2.0}), 11);
  CHECK(s.counts == std::vector<std::uint64_t>{0, 10, 20});
  std::size_t len2 = 0, len3 = 0;
  for (std::size_t i = 1; i < s.formula.clause_count(); ++i) {
    const HornClause c = s.formula.clause(i);
    REQUIRE(c.positive.has_value());
    if (c.negatives.size() == 1) ++len2;
    if (c.negatives.size() == 2) ++len3;
    CHECK(std::is_sorted(c.negatives.begin(), c.negatives.end()));
    for (Var v : c.negatives) CHECK(v != *c.positive);
  }
  CHECK(len2 == 10);
  CHECK(len3 == 20);
}

TEST_CASE("sampler validation") {
  CHECK_THROWS_AS(sample_ensemble(0, DensityVector::of({0.0}), 1), NTooSmall);
  CHECK_THROWS_AS(sample_ensemble(2, DensityVector::of({0.0, 1.0, 1.0}), 1),
                  NTooSmall);
  CHECK_THROWS_AS(sample_ensemble(10, DensityVector::of({0.95}), 1),
                  DensityTooHigh);
}

TEST_CASE("same seed reproduces the formula byte for byte") {
  const DensityVector dv = DensityVector::of({0.2, 0.8, 1.5});
  const std::string a = serialize_formula(sample_ensemble(50, dv, 99).formula);
  const std::string b = serialize_formula(sample_ensemble(50, dv, 99).formula);
  const std::string c = serialize_formula(sample_ensemble(50, dv, 98).formula);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("length-2 clause draws are uniform over all candidates") {
  // n=5, j=2: 2*C(5,2) = 20 possible clauses. 500 seeds x 20 clauses each;
  // chi-squared against uniform with 19 dof (0.999 quantile 43.8).
  const DensityVector dv = DensityVector::of({0.0, 4.0});
  std::array<std::uint64_t, 25> bins{};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const EnsembleSample s = sample_ensemble(5, dv, seed);
    for (std::size_t i = 1; i < s.formula.clause_count(); ++i) {
      const HornClause c = s.formula.clause(i);
      bins[(*c.positive - 1) * 5 + (c.negatives[0] - 1)]++;
    }
  }
  double chi2 = 0.0;
  const double expected = 500.0 * 20 / 20;
  std::size_t used = 0;
  for (std::size_t p = 0; p < 5; ++p) {
    for (std::size_t q = 0; q < 5; ++q) {
      if (p == q) {
        CHECK(bins[p * 5 + q] == 0);
        continue;
      }
      ++used;
      const double dev = static_cast<double>(bins[p * 5 + q]) - expected;
      chi2 += dev * dev / expected;
    }
  }
  CHECK(used == 20);
  CHECK(chi2 < 43.8);
}

TEST_CASE("hcnf parsing matches the format definition") {
  const HornFormula f = parse_formula("p hcnf 3 2\n-1 0\n2 -1 0\n");
  CHECK(f.n() == 3);
  REQUIRE(f.clause_count() == 2);
  CHECK(f.clause(0) == make_clause(std::nullopt, {1}));
  CHECK(f.clause(1) == make_clause(2, {1}));
}

TEST_CASE("hcnf accepts comments, blank lines and the empty clause") {
  const HornFormula f =
      parse_formula("c a comment\n\np hcnf 2 2\nc mid\n0\n-1 -2 0\n");
  REQUIRE(f.clause_count() == 2);
  CHECK(f.clause(0) == HornClause{});
  CHECK(f.clause(1) == make_clause(std::nullopt, {1, 2}));
}

TEST_CASE("hcnf round trip is byte-identical") {
  const EnsembleSample s =
      sample_ensemble(40, DensityVector::of({0.2, 1.0, 0.5}), 3);
  const std::string text = serialize_formula(s.formula);
  const HornFormula back = parse_formula(text);
  CHECK(back.same_clauses(s.formula));
  CHECK(serialize_formula(back) == text);
}

TEST_CASE("hcnf syntax errors carry position") {
  CHECK_THROWS_AS(parse_formula("p cnf 3 1\n-1 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p hcnf 3 1\n-1\n"), SyntaxError);  // no 0
  CHECK_THROWS_AS(parse_formula("p hcnf 3 1\n-1 0 2 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p hcnf 3 2\n-1 0\n"), SyntaxError);  // m off
  CHECK_THROWS_AS(parse_formula("p hcnf 3 1\n-4 0\n"), SyntaxError);
  try {
    parse_formula("p hcnf 2 1\n1 x 0\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 3);
  }
}

TEST_CASE("two positive literals in one clause is NonHornClause") {
  // A repeated positive literal counts as two positives as well.
  CHECK_THROWS_AS(parse_formula("p hcnf 3 1\n1 1 0\n"), NonHornClause);
  try {
    parse_formula("p hcnf 3 1\n1 2 0\n");
    FAIL("expected NonHornClause");
  } catch (const NonHornClause& e) {
    CHECK(e.line == 2);
  }
}
