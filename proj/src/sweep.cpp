#include "hornfall/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "hornfall/errors.hpp"
#include "hornfall/rng.hpp"
#include "hornfall/sampler.hpp"
#include "hornfall/solver.hpp"
#include "hornfall/theory.hpp"

namespace hornfall {

std::vector<double> AxisSpec::values() const {
  if (step <= 0.0 || stop <= start) return {start};
  std::vector<double> out;
  // Slack absorbs accumulated rounding so the intended stop value is kept.
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

namespace {

double parse_double(const std::string& tok, std::size_t lineno,
                    std::size_t col) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw SyntaxError("expected a number", lineno, col);
  }
}

AxisSpec parse_axis(const std::string& val, std::size_t lineno,
                    std::size_t col) {
  AxisSpec ax;
  const std::size_t c1 = val.find(':');
  if (c1 == std::string::npos) {
    ax.start = ax.stop = parse_double(val, lineno, col);
    ax.step = 0.0;
    return ax;
  }
  const std::size_t c2 = val.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw SyntaxError("axis needs start:stop:step or a single value", lineno,
                      col);
  }
  ax.start = parse_double(val.substr(0, c1), lineno, col);
  ax.stop = parse_double(val.substr(c1 + 1, c2 - c1 - 1), lineno, col + c1 + 1);
  ax.step = parse_double(val.substr(c2 + 1), lineno, col + c2 + 1);
  return ax;
}

std::uint64_t parse_u64(const std::string& tok, std::size_t lineno,
                        std::size_t col) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw SyntaxError("expected an unsigned integer", lineno, col);
  }
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw SyntaxError("integer too large", lineno, col);
  }
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw SyntaxError("expected key=value", lineno, 1);
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    const std::size_t vcol = line.find(val.empty() ? "=" : val) + 1;
    if (val.empty()) throw SyntaxError("empty value", lineno, vcol);

    if (key == "k") {
      const std::uint64_t k = parse_u64(val, lineno, vcol);
      if (k < 1 || k > 3) {
        throw SyntaxError("k must be 1, 2 or 3", lineno, vcol);
      }
      cfg.k = static_cast<int>(k);
    } else if (key == "d1" || key == "d2" || key == "d3") {
      cfg.axes[key[1] - '1'] = parse_axis(val, lineno, vcol);
    } else if (key == "n") {
      cfg.n = static_cast<std::uint32_t>(parse_u64(val, lineno, vcol));
    } else if (key == "trials") {
      cfg.trials = static_cast<std::uint32_t>(parse_u64(val, lineno, vcol));
    } else if (key == "seed") {
      cfg.base_seed = parse_u64(val, lineno, vcol);
    } else if (key == "output") {
      cfg.output = val;
    } else {
      throw SyntaxError("unknown key '" + key + "'", lineno, 1);
    }
  }
  return cfg;
}

SweepConfig parse_sweep_config(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in);
}

double wilson_halfwidth(std::uint32_t successes, std::uint32_t trials) {
  if (trials == 0) throw DomainError("wilson interval needs trials >= 1");
  if (successes > trials) throw DomainError("successes exceed trials");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double nt = trials;
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  return z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
}

namespace {

struct GridPoint {
  double d1, d2, d3;
  std::uint64_t i1, i2, i3;
};

SweepRecord run_point(const GridPoint& g, const SweepConfig& cfg) {
  std::vector<double> d{g.d1};
  if (cfg.k >= 2) d.push_back(g.d2);
  if (cfg.k >= 3) d.push_back(g.d3);
  const DensityVector dv = DensityVector::of(std::move(d));
  const PredictionResult pred = root_t0(dv);

  std::uint32_t sat = 0;
  double backbone_acc = 0.0;
  for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed =
        mix_seed({cfg.base_seed, g.i1, g.i2, g.i3, trial});
    const EnsembleSample sample = sample_ensemble(cfg.n, dv, seed);
    const SolveResult r = solve(sample.formula);
    sat += r.satisfiable ? 1 : 0;
    backbone_acc += static_cast<double>(r.backbone_size) /
                    static_cast<double>(sample.formula.n());
  }

  SweepRecord rec;
  rec.d1 = g.d1;
  rec.d2 = cfg.k >= 2 ? g.d2 : 0.0;
  rec.d3 = cfg.k >= 3 ? g.d3 : 0.0;
  rec.n = cfg.n;
  rec.trials = cfg.trials;
  rec.empirical_p = static_cast<double>(sat) / cfg.trials;
  rec.phi = pred.phi;
  rec.t0 = pred.t0;
  rec.simple = pred.simple;
  rec.wilson_hw = wilson_halfwidth(sat, cfg.trials);
  rec.backbone_mean = backbone_acc / cfg.trials;
  return rec;
}

std::string format_row(const SweepRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%.6g,%.6g,%.6g,%u,%u,%.6f,%.9f,%.9f,%d,%.6f,%.6f\n", r.d1,
                r.d2, r.d3, r.n, r.trials, r.empirical_p, r.phi, r.t0,
                r.simple ? 1 : 0, r.wilson_hw, r.backbone_mean);
  return buf;
}

constexpr const char* kCsvPreamble =
    "# schema: hornfall-sweep-1\n"
    "d1,d2,d3,n,trials,empirical_p,phi,t0,simple,wilson_hw,backbone_mean\n";

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, std::ostream& csv,
                                   unsigned threads) {
  if (cfg.k < 1 || cfg.k > 3) throw DomainError("k must be 1, 2 or 3");
  if (cfg.n < 1) throw DomainError("n must be >= 1");
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw IoError("cannot open output path " + cfg.output);
  }
  const auto emit = [&](const std::string& s) {
    csv << s;
    if (file.is_open()) file << s;
  };

  const std::vector<double> v1 = cfg.axes[0].values();
  const std::vector<double> v2 =
      cfg.k >= 2 ? cfg.axes[1].values() : std::vector<double>{0.0};
  const std::vector<double> v3 =
      cfg.k >= 3 ? cfg.axes[2].values() : std::vector<double>{0.0};

  std::vector<GridPoint> grid;
  grid.reserve(v1.size() * v2.size() * v3.size());
  for (std::size_t i1 = 0; i1 < v1.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < v2.size(); ++i2) {
      for (std::size_t i3 = 0; i3 < v3.size(); ++i3) {
        grid.push_back({v1[i1], v2[i2], v3[i3], i1, i2, i3});
      }
    }
  }

  emit(kCsvPreamble);
  std::vector<SweepRecord> records(grid.size());

  if (threads <= 1 || grid.size() <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      records[i] = run_point(grid[i], cfg);
      emit(format_row(records[i]));
    }
  } else {
    // Workers claim points via a shared cursor; the main thread writes
    // rows strictly in grid order as they become ready, so the CSV bytes
    // do not depend on scheduling.
    std::atomic<std::size_t> cursor{0};
    std::vector<std::atomic<bool>> done(grid.size());
    for (auto& d : done) d.store(false, std::memory_order_relaxed);

    const unsigned nworkers =
        std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= grid.size()) return;
          records[i] = run_point(grid[i], cfg);
          done[i].store(true, std::memory_order_release);
        }
      });
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      while (!done[i].load(std::memory_order_acquire)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
      }
      emit(format_row(records[i]));
    }
    for (auto& t : pool) t.join();
  }

  if (file.is_open()) {
    file.flush();
    if (!file) throw IoError("write failed on " + cfg.output);
  }
  return records;
}

JumpProbe jump_probe(double d1, double d3, double window, std::uint32_t n,
                     std::uint32_t trials, std::uint64_t seed) {
  if (!(window > 0.0)) throw DomainError("window must be positive");
  if (!(d3 - window >= 0.0)) throw DomainError("d3 - window must be >= 0");
  if (n < 1 || trials < 1) throw DomainError("need n >= 1 and trials >= 1");

  JumpProbe out;
  const double sides[2] = {d3 - window, d3 + window};
  double* phi[2] = {&out.phi_below, &out.phi_above};
  double* emp[2] = {&out.empirical_below, &out.empirical_above};
  for (int side = 0; side < 2; ++side) {
    const DensityVector dv = DensityVector::of({d1, 0.0, sides[side]});
    *phi[side] = root_t0(dv).phi;
    std::uint32_t sat = 0;
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t s =
          mix_seed({seed, static_cast<std::uint64_t>(side), trial});
      sat += solve(sample_ensemble(n, dv, s).formula).satisfiable ? 1 : 0;
    }
    *emp[side] = static_cast<double>(sat) / trials;
  }
  return out;
}

}  // namespace hornfall
