#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hornfall/errors.hpp"
#include "hornfall/sweep.hpp"

using namespace hornfall;

namespace {

const char* kGoldenPreamble =
    "# schema: hornfall-sweep-1\n"
    "d1,d2,d3,n,trials,empirical_p,phi,t0,simple,wilson_hw,backbone_mean\n";

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.k = 2;
  cfg.axes[0] = {0.1, 0.1, 0.0};
  cfg.axes[1] = {0.5, 1.5, 0.5};
  cfg.n = 200;
  cfg.trials = 8;
  cfg.base_seed = 3;
  return cfg;
}

// The small_config() rows, frozen: the seeded sampler and the row
// formatter must never drift.
const char* kGoldenSmall =
    "0.1,0.5,0,200,8,1.000000,0.915904815,0.175685666,1,0.162204,0.169375\n"
    "0.1,1,0,200,8,0.625000,0.675934761,0.391658715,1,0.278707,0.391250\n"
    "0.1,1.5,0,200,8,0.250000,0.365437960,0.671105836,1,0.259623,0.671875\n";

}  // namespace

TEST_CASE("axis expansion") {
  const auto v = AxisSpec{0.25, 5.0, 0.25}.values();
  REQUIRE(v.size() == 20);
  CHECK(v.front() == 0.25);
  CHECK(v.back() == doctest::Approx(5.0).epsilon(1e-12));

  CHECK(AxisSpec{0.7, 0.7, 0.0}.values() == std::vector<double>{0.7});
  CHECK(AxisSpec{1.0, 0.5, 0.25}.values() == std::vector<double>{1.0});

  const auto g = AxisSpec{0.0, 0.35, 0.35 / 29.0}.values();
  REQUIRE(g.size() == 30);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(0.35).epsilon(1e-9));
}

TEST_CASE("config parsing") {
  const SweepConfig cfg = parse_sweep_config(
      "# sweep over d2\n"
      "k = 2\n"
      "d1 = 0.1\n"
      "d2 = 0.25:5:0.25\n"
      "n = 4000\n"
      "trials = 50\n"
      "seed = 7\n"
      "output = /tmp/x.csv\n");
  CHECK(cfg.k == 2);
  CHECK(cfg.axes[0].start == 0.1);
  CHECK(cfg.axes[0].values() == std::vector<double>{0.1});
  CHECK(cfg.axes[1].start == 0.25);
  CHECK(cfg.axes[1].stop == 5.0);
  CHECK(cfg.axes[1].step == 0.25);
  CHECK(cfg.n == 4000);
  CHECK(cfg.trials == 50);
  CHECK(cfg.base_seed == 7);
  CHECK(cfg.output == "/tmp/x.csv");

  const SweepConfig defaults = parse_sweep_config("");
  CHECK(defaults.k == 3);
  CHECK(defaults.n == 20000);
  CHECK(defaults.trials == 200);
  CHECK(defaults.base_seed == 1);
  CHECK(defaults.output.empty());
}

TEST_CASE("config parse errors carry the line") {
  CHECK_THROWS_AS(parse_sweep_config("bogus=1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("k=4\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("k=0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("d1=abc\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("d2=1:2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("n=\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("n=12x\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sweep_config("just a line\n"), SyntaxError);

  try {
    parse_sweep_config("k=2\nd2=oops\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("wilson halfwidth") {
  CHECK(wilson_halfwidth(10, 10) == doctest::Approx(0.138766).epsilon(1e-5));
  CHECK(wilson_halfwidth(6, 10) == doctest::Approx(0.259573).epsilon(1e-5));
  CHECK(wilson_halfwidth(1, 1) == doctest::Approx(0.396725).epsilon(1e-5));
  CHECK(wilson_halfwidth(0, 100) == doctest::Approx(0.0184967).epsilon(1e-5));
  CHECK(wilson_halfwidth(3, 10) == wilson_halfwidth(7, 10));
  CHECK_THROWS_AS(wilson_halfwidth(1, 0), DomainError);
  CHECK_THROWS_AS(wilson_halfwidth(11, 10), DomainError);
}

TEST_CASE("sweep rows are deterministic and match the golden bytes") {
  const SweepConfig cfg = small_config();
  std::ostringstream a, b;
  const auto rec_a = run_sweep(cfg, a);
  const auto rec_b = run_sweep(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str() == std::string(kGoldenPreamble) + kGoldenSmall);

  REQUIRE(rec_a.size() == 3);
  CHECK(rec_a[1].phi == doctest::Approx(0.675934760815).epsilon(1e-8));
  CHECK(rec_a[1].t0 == doctest::Approx(0.391658715267).epsilon(1e-8));
  for (const SweepRecord& r : rec_a) {
    CHECK(r.simple);
    CHECK(r.empirical_p >= 0.0);
    CHECK(r.empirical_p <= 1.0);
    // Statistical consistency band and backbone concentration.
    CHECK(std::abs(r.empirical_p - r.phi) <=
          std::max(0.05, 4.0 * r.wilson_hw));
    CHECK(std::abs(r.backbone_mean - r.t0) < 0.05);
    const auto sat =
        static_cast<std::uint32_t>(std::lround(r.empirical_p * r.trials));
    CHECK(r.wilson_hw == wilson_halfwidth(sat, r.trials));
  }
}

TEST_CASE("worker pool preserves row order") {
  const SweepConfig cfg = small_config();
  std::ostringstream two, many;
  run_sweep(cfg, two, 2);
  run_sweep(cfg, many, 8);
  const std::string want = std::string(kGoldenPreamble) + kGoldenSmall;
  CHECK(two.str() == want);
  CHECK(many.str() == want);
}

TEST_CASE("degenerate single point") {
  SweepConfig cfg;
  cfg.n = 10;
  cfg.trials = 1;
  std::ostringstream out;
  const auto recs = run_sweep(cfg, out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].empirical_p == 1.0);  // the lone negative unit is satisfiable
  CHECK(recs[0].phi == 1.0);
  CHECK(out.str() ==
        std::string(kGoldenPreamble) +
            "0,0,0,10,1,1.000000,1.000000000,0.000000000,1,0.396725,"
            "0.000000\n");
}

TEST_CASE("output path tees the same bytes") {
  SweepConfig cfg = small_config();
  cfg.output = "/tmp/hornfall-sweep-unit.csv";
  std::ostringstream stream_copy;
  run_sweep(cfg, stream_copy);

  std::ifstream in(cfg.output);
  REQUIRE(in.good());
  std::ostringstream file_copy;
  file_copy << in.rdbuf();
  CHECK(file_copy.str() == stream_copy.str());

  cfg.output = "/nonexistent-dir-zzz/out.csv";
  std::ostringstream sink;
  CHECK_THROWS_AS(run_sweep(cfg, sink), IoError);
}

TEST_CASE("sweep validates its configuration") {
  SweepConfig cfg;
  std::ostringstream sink;
  cfg.n = 0;
  CHECK_THROWS_AS(run_sweep(cfg, sink), DomainError);
  cfg.n = 10;
  cfg.trials = 0;
  CHECK_THROWS_AS(run_sweep(cfg, sink), DomainError);
  cfg.trials = 1;
  cfg.k = 5;
  CHECK_THROWS_AS(run_sweep(cfg, sink), DomainError);
}

TEST_CASE("jump probe straddles the transition") {
  // n=16000 keeps both probe points outside the finite-size critical
  // window, so the empirical rates track phi and exhibit the jump.
  const JumpProbe p = jump_probe(0.1, 3.0, 0.1, 16000, 50, 11);
  CHECK(p.phi_below == doctest::Approx(0.9052233500671736).epsilon(1e-9));
  CHECK(p.phi_above == doctest::Approx(0.06358785510161669).epsilon(1e-9));
  CHECK(std::abs(p.phi_below - 0.905) < 1e-3);
  CHECK(std::abs(p.phi_above - 0.064) < 1e-3);
  CHECK(std::abs(p.empirical_below - p.phi_below) < 0.15);
  CHECK(std::abs(p.empirical_above - p.phi_above) < 0.15);
  CHECK(p.empirical_below - p.empirical_above > 0.5);

  const JumpProbe q = jump_probe(0.1, 3.0, 0.1, 16000, 50, 11);
  CHECK(q.empirical_below == p.empirical_below);
  CHECK(q.empirical_above == p.empirical_above);
}

TEST_CASE("jump probe analytics locate the curve") {
  // d1=0.15 crosses the curve near d3 = 2.19: a genuine jump.
  const JumpProbe hit = jump_probe(0.15, 2.189971223, 0.1, 100, 1, 1);
  CHECK(hit.phi_below - hit.phi_above > 0.3);

  // d1=0.2 lies above the curve's starting height; no crossing anywhere,
  // so phi moves only smoothly.
  const JumpProbe miss = jump_probe(0.2, 3.0, 0.1, 100, 1, 1);
  CHECK(std::abs(miss.phi_below - miss.phi_above) < 0.02);
  CHECK(miss.phi_below == doctest::Approx(0.0781981).epsilon(1e-5));
  CHECK(miss.phi_above == doctest::Approx(0.0603251).epsilon(1e-5));
}

TEST_CASE("jump probe validates its arguments") {
  CHECK_THROWS_AS(jump_probe(0.1, 3.0, 0.0, 100, 1, 1), DomainError);
  CHECK_THROWS_AS(jump_probe(0.1, 3.0, 3.5, 100, 1, 1), DomainError);
  CHECK_THROWS_AS(jump_probe(0.1, 3.0, 0.1, 0, 1, 1), DomainError);
  CHECK_THROWS_AS(jump_probe(0.1, 3.0, 0.1, 100, 0, 1), DomainError);
}
