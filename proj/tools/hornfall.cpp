#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hornfall/automata.hpp"
#include "hornfall/errors.hpp"
#include "hornfall/formula.hpp"
#include "hornfall/formula_io.hpp"
#include "hornfall/sampler.hpp"
#include "hornfall/solver.hpp"
#include "hornfall/sweep.hpp"
#include "hornfall/theory.hpp"

namespace {

using nlohmann::ordered_json;

// Exit codes: 0 ok, 1 usage, 2 runtime error; solve returns 10 (SAT) or
// 20 (UNSAT) on success instead of 0.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitError = 2;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw hornfall::IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Worker cap: the explicit request, then the HORNFALL_THREADS ceiling,
// then hardware concurrency for the 0 = auto case.
unsigned resolve_threads(unsigned requested) {
  unsigned t = requested;
  if (t == 0) {
    t = std::thread::hardware_concurrency();
    if (t == 0) t = 1;
  }
  if (const char* env = std::getenv("HORNFALL_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      t = std::min<unsigned>(t, static_cast<unsigned>(cap));
    }
  }
  return t;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

struct GenArgs {
  std::uint32_t n = 0;
  std::vector<double> d;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int run_gen(const GenArgs& a) {
  const auto dv = hornfall::DensityVector::of(a.d);
  const auto sample = hornfall::sample_ensemble(a.n, dv, a.seed);
  if (a.output == "-") {
    hornfall::serialize_formula(sample.formula, std::cout);
  } else {
    std::ofstream out(a.output);
    if (!out) throw hornfall::IoError("cannot open " + a.output);
    hornfall::serialize_formula(sample.formula, out);
    if (!out.flush()) throw hornfall::IoError("write failed on " + a.output);
  }
  return kExitOk;
}

int run_solve(const std::string& path, bool with_backbone) {
  const std::string text = slurp(path);
  const hornfall::HornFormula f = hornfall::parse_formula(text);
  const hornfall::SolveResult r = hornfall::solve(f);
  ordered_json j;
  j["schema"] = "hornfall-solve-1";
  j["satisfiable"] = r.satisfiable;
  j["backbone_size"] = r.backbone_size;
  j["steps"] = r.steps;
  if (with_backbone) j["backbone"] = r.backbone;
  print_json(j);
  return r.satisfiable ? kExitSat : kExitUnsat;
}

int run_predict(const std::vector<double>& d, double tol) {
  const auto dv = hornfall::DensityVector::of(d);
  const auto p = hornfall::root_t0(dv, tol);
  ordered_json j;
  j["schema"] = "hornfall-predict-1";
  j["k"] = dv.k();
  j["d"] = dv.d;
  j["t0"] = p.t0;
  j["phi"] = p.phi;
  j["derivative_at_root"] = p.derivative_at_root;
  j["simple"] = p.simple;
  print_json(j);
  return kExitOk;
}

int run_gamma_single(double d3) {
  const auto g = hornfall::gamma_curve(d3);
  ordered_json j;
  j["schema"] = "hornfall-gamma-1";
  j["d3"] = g.d3;
  j["d1"] = g.d1;
  j["t_tangent"] = g.t_tangent;
  print_json(j);
  return kExitOk;
}

int run_gamma_range(const std::string& range) {
  double a = 0, b = 0, step = 0;
  if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3) {
    throw CLI::ValidationError("--d3-range", "expected start:stop:step");
  }
  const hornfall::AxisSpec axis{a, b, step};
  std::cout << "# schema: hornfall-gamma-1\n";
  std::cout << "d3,d1,t_tangent\n";
  char buf[128];
  for (double d3 : axis.values()) {
    const auto g = hornfall::gamma_curve(d3);
    std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g\n", g.d3, g.d1,
                  g.t_tangent);
    std::cout << buf;
  }
  return kExitOk;
}

int run_automaton(const std::string& path, bool emit_horn) {
  const std::string text = slurp(path);
  std::istringstream in(text);
  const hornfall::Automaton a = hornfall::parse_automaton(in);
  if (emit_horn) {
    const auto [f, map] = hornfall::to_horn(a);
    hornfall::serialize_formula(f, std::cout);
    return kExitOk;
  }
  const bool empty = hornfall::emptiness_direct(a);
  const auto [f, map] = hornfall::to_horn(a);
  const hornfall::SolveResult r = hornfall::solve(f);
  ordered_json j;
  j["schema"] = "hornfall-automaton-1";
  j["kind"] = a.kind == hornfall::AutomatonKind::word ? "word" : "tree";
  j["states"] = a.states;
  j["empty"] = empty;
  j["translation_satisfiable"] = r.satisfiable;
  j["agrees"] = empty == r.satisfiable;  // nonempty iff unsatisfiable
  print_json(j);
  return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, unsigned threads) {
  const std::string text = slurp(config_path);
  const hornfall::SweepConfig cfg = hornfall::parse_sweep_config(text);
  if (cfg.output.empty()) {
    hornfall::run_sweep(cfg, std::cout, threads);
  } else {
    // run_sweep writes the file itself; swallow the stream copy.
    struct NullBuf : std::streambuf {
      int overflow(int c) override { return c; }
    } nb;
    std::ostream null_stream(&nb);
    hornfall::run_sweep(cfg, null_stream, threads);
    std::cerr << "wrote " << cfg.output << '\n';
  }
  return kExitOk;
}

struct ProbeArgs {
  double d1 = 0, d3 = 0, window = 0.1;
  std::uint32_t n = 20000, trials = 200;
  std::uint64_t seed = 1;
};

int run_probe(const ProbeArgs& a) {
  const auto p =
      hornfall::jump_probe(a.d1, a.d3, a.window, a.n, a.trials, a.seed);
  ordered_json j;
  j["schema"] = "hornfall-probe-1";
  j["d1"] = a.d1;
  j["d3"] = a.d3;
  j["window"] = a.window;
  j["phi_below"] = p.phi_below;
  j["phi_above"] = p.phi_above;
  j["empirical_below"] = p.empirical_below;
  j["empirical_above"] = p.empirical_above;
  print_json(j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random Horn formula laboratory"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "sample one ensemble formula");
  cmd_gen->add_option("--n", gen.n, "variable count")->required();
  cmd_gen->add_option("--d", gen.d, "densities d1,d2,...,dk")
      ->required()
      ->delimiter(',');
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("-o,--output", gen.output, "output path, - = stdout");

  std::string solve_path;
  bool solve_backbone = false;
  auto* cmd_solve = app.add_subcommand("solve", "decide an hcnf file");
  cmd_solve->add_option("file", solve_path, "hcnf path, - = stdin")
      ->required();
  cmd_solve->add_flag("--backbone", solve_backbone,
                      "include the backbone set in the output");

  std::vector<double> predict_d;
  int predict_k = 0;
  double predict_tol = 1e-12;
  auto* cmd_predict =
      app.add_subcommand("predict", "analytic t0 and phi for densities");
  cmd_predict->add_option("--d", predict_d, "densities d1,d2,...,dk")
      ->required()
      ->delimiter(',');
  cmd_predict->add_option("--k", predict_k,
                          "clause length bound (checked against --d)");
  cmd_predict->add_option("--tol", predict_tol, "root bisection tolerance");

  double gamma_d3 = 0;
  std::string gamma_range;
  auto* cmd_gamma =
      app.add_subcommand("gamma", "discontinuity curve in the (d1,d3) plane");
  auto* opt_d3 = cmd_gamma->add_option("--d3", gamma_d3, "single d3 >= 2");
  auto* opt_range =
      cmd_gamma->add_option("--d3-range", gamma_range, "start:stop:step CSV");
  opt_d3->excludes(opt_range);
  opt_range->excludes(opt_d3);

  std::string aut_path;
  bool aut_emit = false, aut_check = false;
  auto* cmd_aut =
      app.add_subcommand("automaton", "emptiness via the Horn translation");
  cmd_aut->add_option("file", aut_path, "automaton path, - = stdin")
      ->required();
  auto* opt_emit = cmd_aut->add_flag("--emit-horn", aut_emit,
                                     "print the translated formula");
  auto* opt_check = cmd_aut->add_flag("--check-empty", aut_check,
                                      "decide emptiness both ways");
  opt_emit->excludes(opt_check);
  opt_check->excludes(opt_emit);

  std::string sweep_config;
  unsigned sweep_threads = 0;
  auto* cmd_sweep = app.add_subcommand("sweep", "Monte Carlo density sweep");
  cmd_sweep->add_option("--config", sweep_config, "config path, - = stdin")
      ->required();
  cmd_sweep->add_option("--threads", sweep_threads, "workers, 0 = auto");

  ProbeArgs probe;
  auto* cmd_probe =
      app.add_subcommand("probe", "phi and empirical p on both sides of d3");
  cmd_probe->add_option("--d1", probe.d1, "d1")->required();
  cmd_probe->add_option("--d3", probe.d3, "probe center")->required();
  cmd_probe->add_option("--window", probe.window, "offset to each side");
  cmd_probe->add_option("--n", probe.n, "variables per trial");
  cmd_probe->add_option("--trials", probe.trials, "trials per side");
  cmd_probe->add_option("--seed", probe.seed, "RNG seed");

  try {
    app.parse(argc, argv);

    if (cmd_predict->parsed() && predict_k != 0 &&
        predict_k != static_cast<int>(predict_d.size())) {
      throw CLI::ValidationError("--k",
                                 "does not match the --d component count");
    }
    if (cmd_gamma->parsed() && !*opt_d3 && !*opt_range) {
      throw CLI::ValidationError("gamma", "need --d3 or --d3-range");
    }
    if (cmd_aut->parsed() && !aut_emit && !aut_check) {
      throw CLI::ValidationError("automaton",
                                 "need --emit-horn or --check-empty");
    }

    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_solve->parsed()) return run_solve(solve_path, solve_backbone);
    if (cmd_predict->parsed()) return run_predict(predict_d, predict_tol);
    if (cmd_gamma->parsed()) {
      return *opt_d3 ? run_gamma_single(gamma_d3) : run_gamma_range(gamma_range);
    }
    if (cmd_aut->parsed()) return run_automaton(aut_path, aut_emit);
    if (cmd_sweep->parsed()) {
      return run_sweep_cmd(sweep_config, resolve_threads(sweep_threads));
    }
    if (cmd_probe->parsed()) return run_probe(probe);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help path
    std::cerr << e.what() << '\n' << app.help() << '\n';
    return kExitUsage;
  } catch (const hornfall::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
