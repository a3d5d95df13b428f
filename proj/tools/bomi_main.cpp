// Command-line front end: run experiments, sweep missing-data settings,
// render summary charts, list built-in objectives.
//
// Exit codes: 0 success, 1 configuration error, 2 every run failed,
// 3 some runs failed.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bomi/benchfns.hpp"
#include "bomi/harness.hpp"

namespace {

using bomi::harness::ExperimentConfig;
using bomi::harness::ExperimentResult;

int exit_code_for(const ExperimentResult& res) {
  if (res.failed() == 0) return 0;
  if (res.succeeded() == 0) return 2;
  return 3;
}

void report(const ExperimentResult& res, const std::string& out_dir) {
  std::printf("%d/%zu runs succeeded; results in %s\n", res.succeeded(),
              res.runs.size(), out_dir.c_str());
  if (res.failed() > 0)
    std::printf("%d runs failed; see %s/failures.log\n", res.failed(),
                out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization with missing inputs"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  int jobs_flag = 0;

  CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "path to a key=value config file")
      ->required();
  run->add_option("--out", out_flag, "output directory (overrides config/env)");
  run->add_option("--jobs", jobs_flag, "parallel runs (overrides config)");

  std::string sweep_axis;
  std::vector<double> sweep_values;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Rerun an experiment across one missing-data axis");
  sweep->add_option("config", config_path, "path to a key=value config file")
      ->required();
  sweep->add_option("--axis", sweep_axis, "rho | eta | v")->required();
  sweep->add_option("--values", sweep_values, "axis values")
      ->required()
      ->expected(-1);
  sweep->add_option("--out", out_flag, "output directory (overrides config/env)");
  sweep->add_option("--jobs", jobs_flag, "parallel runs (overrides config)");

  std::string summary_path, chart_path;
  CLI::App* chart =
      app.add_subcommand("chart", "Render a summary.csv as an SVG chart");
  chart->add_option("summary", summary_path, "path to a summary.csv")->required();
  chart->add_option("--out", chart_path, "output SVG path")->required();

  CLI::App* list =
      app.add_subcommand("list-functions", "List built-in benchmark objectives");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) {
      for (const bomi::bench::Function& f : bomi::bench::registry()) {
        std::printf("%-12s %dd  [", f.id.c_str(), f.dims);
        for (int i = 0; i < f.dims; ++i)
          std::printf("%s%g..%g", i ? ", " : "", f.domain.lower()[i],
                      f.domain.upper()[i]);
        std::printf("]\n");
      }
      return 0;
    }

    if (chart->parsed()) {
      std::vector<bomi::harness::SummaryRow> rows = bomi::harness::parse_summary_csv(
          bomi::harness::read_file(summary_path));
      bomi::harness::write_file_atomic(chart_path,
                                       bomi::harness::render_chart_svg(rows));
      std::printf("wrote %s\n", chart_path.c_str());
      return 0;
    }

    ExperimentConfig cfg = bomi::harness::load_config(config_path);
    if (jobs_flag > 0) cfg.jobs = jobs_flag;
    std::string out_dir = bomi::harness::resolve_out_dir(out_flag, cfg.out_dir);

    if (run->parsed()) {
      ExperimentResult res = bomi::harness::run_experiment(cfg, out_dir);
      std::string svg = bomi::harness::render_chart_svg(
          bomi::harness::summarize(cfg, res));
      bomi::harness::write_file_atomic(out_dir + "/summary.svg", svg);
      report(res, out_dir);
      return exit_code_for(res);
    }

    if (sweep->parsed()) {
      std::vector<bomi::harness::SweepPoint> points =
          bomi::harness::sweep(cfg, sweep_axis, sweep_values, out_dir);
      int succeeded = 0, failed = 0;
      for (const bomi::harness::SweepPoint& p : points) {
        succeeded += p.result.succeeded();
        failed += p.result.failed();
      }
      std::printf("%d/%d runs succeeded across %zu axis values; results in %s\n",
                  succeeded, succeeded + failed, points.size(), out_dir.c_str());
      if (failed == 0) return 0;
      return succeeded == 0 ? 2 : 3;
    }
  } catch (const bomi::harness::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
