#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hornfall/formula.hpp"

namespace hornfall {

// One density axis: the values start, start+step, ..., up to stop
// (inclusive within rounding slack). step <= 0 means the single value
// start.
struct AxisSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

// Monte Carlo sweep over a density grid. k chooses how many of the axes
// participate (k=2: d1 x d2; k=3: d1 x d2 x d3).
struct SweepConfig {
  int k = 3;
  std::array<AxisSpec, 3> axes;  // d1, d2, d3
  std::uint32_t n = 20000;
  std::uint32_t trials = 200;
  std::uint64_t base_seed = 1;
  std::string output;  // path; empty = caller-provided stream only
};

// Parses the key=value config text: keys k, d1, d2, d3 (scalar or
// start:stop:step), n, trials, seed, output. Unknown keys and malformed
// values raise SyntaxError with the line.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config(const std::string& text);

struct SweepRecord {
  double d1, d2, d3;
  std::uint32_t n, trials;
  double empirical_p;    // fraction of satisfiable trials
  double phi;            // analytic prediction
  double t0;
  bool simple;
  double wilson_hw;      // 95% Wilson interval half-width
  double backbone_mean;  // mean backbone fraction over trials
};

// 95% Wilson score interval half-width for successes out of trials.
double wilson_halfwidth(std::uint32_t successes, std::uint32_t trials);

// Runs the sweep: for every grid point, trials independent
// sample-and-solve draws with per-trial seed mix(base_seed, i1, i2, i3,
// trial), aggregated into one record per point. Grid points are
// distributed over `threads` workers (0 = hardware default capped by the
// HORNFALL_THREADS handling in the CLI), and rows are streamed to csv in
// deterministic grid order (d1 outermost, d3 innermost) regardless of
// completion order, so identical configs produce byte-identical CSV.
// The CSV starts with a schema comment and the header
// d1,d2,d3,n,trials,empirical_p,phi,t0,simple,wilson_hw,backbone_mean.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, std::ostream& csv,
                                   unsigned threads = 1);

// Satisfiability on both sides of a candidate discontinuity: analytic phi
// and empirical frequency at d3-window and d3+window for the k=3, d2=0
// slice at the given d1.
struct JumpProbe {
  double phi_below, phi_above;
  double empirical_below, empirical_above;
};
JumpProbe jump_probe(double d1, double d3, double window, std::uint32_t n,
                     std::uint32_t trials, std::uint64_t seed);

}  // namespace hornfall
