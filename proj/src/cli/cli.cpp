#include "pampac/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pampac/baselines.hpp"
#include "pampac/engine.hpp"
#include "pampac/io/curve_io.hpp"
#include "pampac/io/param_file.hpp"
#include "pampac/kernels.hpp"
#include "pampac/problems/circle.hpp"
#include "pampac/problems/ks.hpp"
#include "pampac/problems/plugin.hpp"

namespace pampac {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string params_path;
  std::string initial_path;
  std::string problem = "circle";
  std::string plugin_path;
  std::string algo = "pampac";
  std::string outdir = ".";
  std::string isa = "auto";
  std::optional<int> budget;
  std::size_t threads = 0;
  double ks_amplitude = 8.09;
  bool benchmark = false;
};

struct Summary {
  std::string algorithm;
  TerminationReason reason = TerminationReason::iteration_budget;
  std::vector<CurvePoint> points;
  std::size_t rounds = 0;
  std::size_t steps = 0;
  std::size_t failures = 0;
  double seconds = 0.0;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ProblemDefinition make_problem(const Options& o, const RunParams& params, const CurvePoint& initial) {
  if (o.problem == "circle") return circle_problem();
  if (o.problem == "ks") {
    if (params.n_dim < 18) throw InputError("ks problem needs N_DIM = n_grid + 2 with n_grid >= 16");
    const auto n = static_cast<std::size_t>(params.n_dim - 2);
    return ks_problem(make_ks_config(n, o.ks_amplitude, std::span(initial.z).first(n)));
  }
  if (o.problem == "plugin") {
    if (o.plugin_path.empty()) throw InputError("--problem plugin requires --plugin");
    return load_plugin_problem(o.plugin_path);
  }
  throw InputError("unknown problem " + o.problem);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Summary run_pampac(const ProblemDefinition& problem, const RunParams& params, const CurvePoint& initial,
                   const Options& o, std::ostream& out, std::ofstream* curve) {
  EngineOptions eo;
  eo.threads = o.threads;
  eo.diagnostics = &out;
  eo.dot_dir = o.outdir;
  const auto t0 = std::chrono::steady_clock::now();
  PointSink sink;
  if (curve != nullptr) {
    sink = [curve](const CurvePoint& p) {
      write_curve_point(*curve, p);
      curve->flush();
    };
  }
  ContinuationResult r = run_continuation(problem, params, initial.z, sink, eo);
  return {"pampac", r.termination_reason, std::move(r.accepted_points), r.rounds_executed, r.corrector_steps_total,
          r.nodes_failed, seconds_since(t0)};
}

Summary run_serial(const std::string& algo, const ProblemDefinition& problem, const RunParams& params,
                   const CurvePoint& initial) {
  const auto t0 = std::chrono::steady_clock::now();
  SerialTrace t = algo == "natural" ? natural_continuation(problem, params, initial.z)
                                    : serial_pac(problem, params, initial.z);
  return {algo, t.termination_reason, std::move(t.accepted_points), t.corrector_steps_total,
          t.corrector_steps_total, t.failed_predictors, seconds_since(t0)};
}

Summary run_algorithm(const std::string& algo, const ProblemDefinition& problem, const RunParams& params,
                      const CurvePoint& initial, const Options& o, std::ostream& out, std::ofstream* curve) {
  if (algo == "pampac") return run_pampac(problem, params, initial, o, out, curve);
  Summary s = run_serial(algo, problem, params, initial);
  if (curve != nullptr) {
    for (const auto& p : s.points) write_curve_point(*curve, p);
  }
  return s;
}

void print_summary(std::ostream& out, const Summary& s) {
  out << "algorithm " << s.algorithm << '\n'
      << "termination " << termination_name(s.reason) << '\n'
      << "points " << s.points.size() << '\n'
      << "rounds " << s.rounds << '\n'
      << "corrector_steps " << s.steps << '\n'
      << "failures " << s.failures << '\n'
      << "wall_time_s " << s.seconds << '\n';
}

std::string benchmark_table(const std::vector<Summary>& rows) {
  std::ostringstream t;
  char line[200];
  std::snprintf(line, sizeof line, "%-12s %-20s %8s %8s %10s %9s %10s\n", "algorithm", "termination", "points",
                "rounds", "steps", "failures", "wall_s");
  t << line;
  for (const auto& s : rows) {
    std::snprintf(line, sizeof line, "%-12s %-20s %8zu %8zu %10zu %9zu %10.3f\n", s.algorithm.c_str(),
                  std::string(termination_name(s.reason)).c_str(), s.points.size(), s.rounds, s.steps, s.failures,
                  s.seconds);
    t << line;
  }
  return t.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Parallel adaptive pseudo-arclength continuation", "pampac"};
  app.add_option("--params", o.params_path, "parameter file (KEY value lines)")->required()->check(CLI::ExistingFile);
  app.add_option("--initial", o.initial_path, "file holding the converged initial point")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--problem", o.problem, "circle | ks | plugin")
      ->check(CLI::IsMember({"circle", "ks", "plugin"}));
  app.add_option("--plugin", o.plugin_path, "shared library for --problem plugin")->check(CLI::ExistingFile);
  app.add_option("--algo", o.algo, "pampac | serial-pac | natural")
      ->check(CLI::IsMember({"pampac", "serial-pac", "natural"}));
  app.add_option("--outdir", o.outdir, "output directory for curve.txt and DOT files");
  app.add_option("--budget", o.budget, "worker budget override")->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "physical worker threads (0: automatic)");
  app.add_option("--ks-amplitude", o.ks_amplitude, "amplitude A of the sin term");
  app.add_option("--isa", o.isa, "kernel set: auto | scalar | avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.add_flag("--benchmark", o.benchmark, "also run serial-pac and print a comparison table");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (o.isa == "scalar") kernels::set_isa(kernels::Isa::scalar);
  if (o.isa == "avx2" && !kernels::set_isa(kernels::Isa::avx2)) {
    err << "error: AVX2 kernels are not available on this machine\n";
    return 2;
  }

  RunParams params;
  CurvePoint initial;
  std::optional<ProblemDefinition> problem;
  try {
    params = load_parameters(o.params_path);
    if (o.budget) {
      params.worker_budget = *o.budget;
      validate(params);
    }
    initial = read_initial_point(o.initial_path, params.n_dim);
    problem = make_problem(o, params, initial);
    fs::create_directories(o.outdir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::ofstream curve(fs::path(o.outdir) / "curve.txt");
    if (!curve) throw std::runtime_error("cannot write curve.txt in " + o.outdir);
    std::vector<Summary> rows;
    rows.push_back(run_algorithm(o.algo, *problem, params, initial, o, out, &curve));
    print_summary(out, rows.front());
    if (o.benchmark) {
      for (const char* other : {"pampac", "serial-pac"}) {
        if (o.algo != other) rows.push_back(run_algorithm(other, *problem, params, initial, o, out, nullptr));
      }
      const std::string table = benchmark_table(rows);
      out << '\n' << table;
      std::ofstream(fs::path(o.outdir) / "benchmark.txt") << table;
    }
    return rows.front().reason == TerminationReason::reached_lambda_max ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace pampac
