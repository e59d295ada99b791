#include "hornfall/solver.hpp"

#include <algorithm>

#include "hornfall/rng.hpp"

namespace hornfall {

namespace {

// Counter-based propagation state, rebuilt per solve. counter[i] is the
// number of negative literals of clause i not yet satisfied by the
// backbone; a clause fires when it reaches zero. occ_* is a CSR map from
// variable to the clauses where it appears negatively.
struct Propagation {
  std::vector<std::uint32_t> counter;
  std::vector<std::uint32_t> occ_begin;
  std::vector<std::uint32_t> occ_clause;
  std::vector<char> implied;
  std::vector<Var> pending;

  explicit Propagation(const HornFormula& f)
      : counter(f.clause_count()),
        occ_begin(f.n() + 2, 0),
        implied(f.n() + 1, 0) {
    const std::size_t m = f.clause_count();
    for (std::size_t i = 0; i < m; ++i) {
      const auto negs = f.negatives(i);
      counter[i] = static_cast<std::uint32_t>(negs.size());
      for (Var v : negs) ++occ_begin[v + 1];
    }
    for (std::size_t v = 1; v < occ_begin.size(); ++v)
      occ_begin[v] += occ_begin[v - 1];
    occ_clause.resize(occ_begin.back());
    std::vector<std::uint32_t> fill(occ_begin.begin(), occ_begin.end() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (Var v : f.negatives(i))
        occ_clause[fill[v]++] = static_cast<std::uint32_t>(i);
    }
    // Clauses with no negatives and a positive literal seed the queue.
    for (std::size_t i = 0; i < m; ++i) {
      if (counter[i] == 0) enqueue(f.positive_raw(i));
    }
  }

  void enqueue(Var v) {
    if (v != 0 && !implied[v]) {
      implied[v] = 1;
      pending.push_back(v);
    }
  }
};

SolveResult run(const HornFormula& f, Xoshiro256ss* shuffle) {
  Propagation st(f);
  std::uint64_t steps = 0;
  // FIFO by default; the shuffled mode promotes a random pending variable
  // into the head slot first. Either way each variable is processed once
  // and the resulting fixpoint is identical.
  std::size_t head = 0;
  while (head < st.pending.size()) {
    if (shuffle) {
      const std::size_t pick =
          head + shuffle->below(st.pending.size() - head);
      std::swap(st.pending[head], st.pending[pick]);
    }
    const Var v = st.pending[head++];
    ++steps;
    for (std::uint32_t idx = st.occ_begin[v]; idx < st.occ_begin[v + 1];
         ++idx) {
      const std::uint32_t ci = st.occ_clause[idx];
      if (--st.counter[ci] == 0) st.enqueue(f.positive_raw(ci));
    }
  }

  SolveResult res;
  res.steps = steps;
  res.backbone.reserve(steps);
  for (Var v = 1; v <= f.n(); ++v) {
    if (st.implied[v]) res.backbone.push_back(v);
  }
  res.backbone_size = res.backbone.size();
  // UNSAT exactly when a clause without a positive literal has every
  // negative satisfied-away, i.e. all its variables implied. Covers the
  // ensemble's negative unit and arbitrary negative clauses alike; the
  // empty clause (counter 0, no positive) is unsatisfiable by itself.
  res.satisfiable = true;
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    if (f.positive_raw(i) == 0 && st.counter[i] == 0) {
      res.satisfiable = false;
      break;
    }
  }
  return res;
}

}  // namespace

SolveResult solve(const HornFormula& f) { return run(f, nullptr); }

SolveResult solve_shuffled(const HornFormula& f, std::uint64_t order_seed) {
  Xoshiro256ss rng(order_seed);
  return run(f, &rng);
}

double backbone_fraction(const HornFormula& f) {
  return static_cast<double>(solve(f).backbone_size) /
         static_cast<double>(f.n());
}

}  // namespace hornfall
