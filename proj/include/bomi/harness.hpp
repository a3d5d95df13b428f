#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bomi/core.hpp"
#include "bomi/simulator.hpp"
#include "bomi/strategies.hpp"

namespace bomi::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value experiment description; defaults follow the benchmark
// protocol. See README for the grammar and the full key list.
struct ExperimentConfig {
  std::string function_id = "schwefel5";
  std::vector<StrategyKind> strategies;  // empty is invalid
  int iterations = 80;
  int repeats = 10;
  std::uint64_t seed = 42;
  int n_init = 30;
  int jobs = 1;
  sim::MissingModel missing;
  StrategyConfig strategy;
  std::string out_dir;  // may be empty; resolution order: flag, config, env, "results"

  std::string external_command;  // overrides function_id when set
  std::vector<double> external_lower;
  std::vector<double> external_upper;
  double external_timeout_sec = 30.0;

  void validate() const;  // throws ConfigError
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct ResolvedObjective {
  sim::Objective f;
  Domain domain;
  std::string name;
};
ResolvedObjective resolve_objective(const ExperimentConfig& cfg);

struct RunOutcome {
  StrategyKind kind;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Trace trace;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;  // strategy-major, repeat-minor
  int succeeded() const;
  int failed() const;
};

// Executes strategies x repeats (seed = base + repeat), writes one trace CSV
// per successful run, failures.log when anything failed, and summary.csv.
// Failures never abort sibling runs.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir);

struct SummaryRow {
  std::string strategy;
  int iter = 0;
  double mean_best = 0.0;
  double stderr_best = 0.0;  // sample std-dev over repeats / sqrt(repeats)
};

std::vector<SummaryRow> summarize(const ExperimentConfig& cfg,
                                  const ExperimentResult& res);

std::string format_trace_csv(const Trace& trace, int dims);
std::string format_summary_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

// Best-so-far mean with a +-stderr band per strategy, as a standalone SVG.
// Deterministic bytes; throws ConfigError when rows are empty.
std::string render_chart_svg(const std::vector<SummaryRow>& rows);

struct SweepPoint {
  double value = 0.0;
  ExperimentResult result;
};

// Reruns the experiment once per axis value (axis: rho | eta | v), each into
// out_root/<axis>_<value>/, then writes out_root/sweep_<axis>.csv holding the
// final mean best per strategy per value.
std::vector<SweepPoint> sweep(const ExperimentConfig& cfg, const std::string& axis,
                              const std::vector<double>& values,
                              const std::string& out_root);

// Wraps a shell command as an objective: the point's coordinates are appended
// as arguments, stdout must hold one real number. Nonzero exit, timeout or
// unparseable output raise with the captured output.
sim::Objective external_objective(const std::string& command, double timeout_sec);

void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
std::string fmt_double(double v);  // %.17g, round-trip exact

// flag > config > BOMI_OUT_DIR env > "results"
std::string resolve_out_dir(const std::string& flag_value,
                            const std::string& config_value);

}  // namespace bomi::harness
