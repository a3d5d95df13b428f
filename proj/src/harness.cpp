#include "bomi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <thread>

#include "bomi/acquisition.hpp"
#include "bomi/benchfns.hpp"

namespace bomi::harness {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& v, int line) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || trim(end) != "" || !std::isfinite(x))
    throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" +
                      v + "'");
  return x;
}

long long parse_int(const std::string& v, int line) {
  double x = parse_double(v, line);
  if (x != std::floor(x) || std::abs(x) > 1e15)
    throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" +
                      v + "'");
  return static_cast<long long>(x);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("line " + std::to_string(line) + ": expected a boolean, got '" +
                    v + "'");
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const std::string& part : split(v, ','))
    out.push_back(parse_double(trim(part), line));
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    if (strategies.empty()) throw ConfigError("config: strategies must be non-empty");
    if (iterations < 1) throw ConfigError("config: iterations must be >= 1");
    if (repeats < 1) throw ConfigError("config: repeats must be >= 1");
    if (n_init < 1) throw ConfigError("config: n_init must be >= 1");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
    if (strategy.knn_k < 1) throw ConfigError("config: knn_k must be >= 1");
    if (!(strategy.beta_alpha >= 0.0))
      throw ConfigError("config: beta_alpha must be >= 0");
    if (!(strategy.gp_noise2 >= 0.0))
      throw ConfigError("config: gp_noise2 must be >= 0");
    if (strategy.acq_candidates < 1)
      throw ConfigError("config: acq_candidates must be >= 1");
    if (!(external_timeout_sec >= 0.0))
      throw ConfigError("config: external_timeout_sec must be >= 0");
    strategy.bpmf.validate();
    if (!external_command.empty()) {
      if (external_lower.empty() || external_lower.size() != external_upper.size())
        throw ConfigError(
            "config: external_lower and external_upper must be non-empty and "
            "equal-length when external_command is set");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool saw_strategies = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string stripped = raw.substr(0, raw.find('#'));
    std::string entry = trim(stripped);
    if (entry.empty()) continue;
    size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty key");

    try {
      if (key == "function") {
        cfg.function_id = value;
      } else if (key == "strategies") {
        cfg.strategies.clear();
        for (const std::string& part : split(value, ',')) {
          std::string name = trim(part);
          if (!name.empty()) cfg.strategies.push_back(StrategyKind::parse(name));
        }
        saw_strategies = true;
      } else if (key == "iterations") {
        cfg.iterations = static_cast<int>(parse_int(value, line));
      } else if (key == "repeats") {
        cfg.repeats = static_cast<int>(parse_int(value, line));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(value, line));
      } else if (key == "n_init") {
        cfg.n_init = static_cast<int>(parse_int(value, line));
      } else if (key == "jobs") {
        cfg.jobs = static_cast<int>(parse_int(value, line));
      } else if (key == "rho") {
        cfg.missing.rho = parse_double(value, line);
      } else if (key == "eta") {
        cfg.missing.eta = parse_double(value, line);
      } else if (key == "v") {
        cfg.missing.max_dims = static_cast<int>(parse_int(value, line));
      } else if (key == "hist_frac") {
        cfg.missing.hist_frac = parse_double(value, line);
      } else if (key == "eta_override") {
        cfg.missing.eta_override.clear();
        for (const std::string& part : split(value, ',')) {
          std::string item = trim(part);
          if (item.empty()) continue;
          size_t colon = item.find(':');
          if (colon == std::string::npos)
            throw ConfigError("line " + std::to_string(line) +
                              ": eta_override items must look like dim:frac");
          int dim = static_cast<int>(parse_int(trim(item.substr(0, colon)), line));
          cfg.missing.eta_override[dim] = parse_double(trim(item.substr(colon + 1)), line);
        }
      } else if (key == "K") {
        cfg.strategy.bpmf.latent_dim = static_cast<int>(parse_int(value, line));
      } else if (key == "xi") {
        cfg.strategy.bpmf.xi = parse_double(value, line);
      } else if (key == "Q") {
        cfg.strategy.bpmf.completions = static_cast<int>(parse_int(value, line));
      } else if (key == "gibbs_iters") {
        cfg.strategy.bpmf.burn_in = static_cast<int>(parse_int(value, line));
      } else if (key == "thinning") {
        cfg.strategy.bpmf.thinning = static_cast<int>(parse_int(value, line));
      } else if (key == "independent_chains") {
        cfg.strategy.bpmf.independent_chains = parse_bool(value, line);
      } else if (key == "mean_fill") {
        cfg.strategy.bpmf.mean_fill = parse_bool(value, line);
      } else if (key == "knn_k") {
        cfg.strategy.knn_k = static_cast<int>(parse_int(value, line));
      } else if (key == "beta_alpha") {
        cfg.strategy.beta_alpha = parse_double(value, line);
      } else if (key == "delta") {
        cfg.strategy.delta = parse_double(value, line);
      } else if (key == "beta_a") {
        cfg.strategy.beta_a = parse_double(value, line);
      } else if (key == "beta_b") {
        cfg.strategy.beta_b = parse_double(value, line);
      } else if (key == "gp_noise2") {
        cfg.strategy.gp_noise2 = parse_double(value, line);
      } else if (key == "acq_candidates") {
        cfg.strategy.acq_candidates = static_cast<int>(parse_int(value, line));
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else if (key == "external_command") {
        cfg.external_command = value;
      } else if (key == "external_lower") {
        cfg.external_lower = parse_double_list(value, line);
      } else if (key == "external_upper") {
        cfg.external_upper = parse_double_list(value, line);
      } else if (key == "external_timeout_sec") {
        cfg.external_timeout_sec = parse_double(value, line);
      } else {
        throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key +
                          "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (!saw_strategies) {
    for (const char* name : {"bomi", "imputation-mean", "imputation-mode",
                             "imputation-knn", "imputation-bpmf", "dropbo",
                             "suggestbo"})
      cfg.strategies.push_back(StrategyKind::parse(name));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

ResolvedObjective resolve_objective(const ExperimentConfig& cfg) {
  if (!cfg.external_command.empty()) {
    Eigen::VectorXd lo = Eigen::Map<const Eigen::VectorXd>(
        cfg.external_lower.data(), static_cast<Eigen::Index>(cfg.external_lower.size()));
    Eigen::VectorXd hi = Eigen::Map<const Eigen::VectorXd>(
        cfg.external_upper.data(), static_cast<Eigen::Index>(cfg.external_upper.size()));
    try {
      return {external_objective(cfg.external_command, cfg.external_timeout_sec),
              Domain(lo, hi), "external"};
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: bad external objective: ") + e.what());
    }
  }
  const bench::Function* f = bench::find(cfg.function_id);
  if (!f)
    throw ConfigError("config: unknown function '" + cfg.function_id +
                      "' (see list-functions)");
  return {f->eval, f->domain, f->id};
}

int ExperimentResult::succeeded() const {
  int n = 0;
  for (const RunOutcome& r : runs) n += r.ok ? 1 : 0;
  return n;
}

int ExperimentResult::failed() const {
  return static_cast<int>(runs.size()) - succeeded();
}

std::string format_trace_csv(const Trace& trace, int dims) {
  std::ostringstream out;
  out << "strategy,seed,iter,event,y,best_y";
  for (int j = 0; j < dims; ++j) out << ",x_" << j;
  for (int j = 0; j < dims; ++j) out << ",mask_" << j;
  out << "\n";
  for (const TraceRecord& rec : trace.records) {
    out << trace.strategy << "," << trace.seed << "," << rec.iter << ","
        << (rec.event ? 1 : 0) << ",";
    if (rec.y) out << fmt_double(*rec.y);
    else out << "?";
    out << "," << fmt_double(rec.best_y);
    for (int j = 0; j < dims; ++j) {
      out << ",";
      if (rec.stored.observed(j)) out << fmt_double(rec.stored.value(j));
      else out << "?";
    }
    for (int j = 0; j < dims; ++j) out << "," << (rec.stored.observed(j) ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

std::vector<SummaryRow> summarize(const ExperimentConfig& cfg,
                                  const ExperimentResult& res) {
  std::vector<SummaryRow> rows;
  for (const StrategyKind& kind : cfg.strategies) {
    std::string name = kind.name();
    std::vector<const Trace*> traces;
    for (const RunOutcome& r : res.runs)
      if (r.ok && r.trace.strategy == name) traces.push_back(&r.trace);
    if (traces.empty()) continue;

    for (int it = 0; it <= cfg.iterations; ++it) {
      // records: one per initial row (iter 0), then one per iteration
      std::size_t idx = static_cast<std::size_t>(cfg.n_init - 1 + it);
      double sum = 0.0;
      for (const Trace* t : traces) sum += t->records.at(idx).best_y;
      double mean = sum / static_cast<double>(traces.size());
      double se = 0.0;
      if (traces.size() > 1) {
        double ss = 0.0;
        for (const Trace* t : traces) {
          double c = t->records.at(idx).best_y - mean;
          ss += c * c;
        }
        se = std::sqrt(ss / static_cast<double>(traces.size() - 1)) /
             std::sqrt(static_cast<double>(traces.size()));
      }
      rows.push_back({name, it, mean, se});
    }
  }
  return rows;
}

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "strategy,iter,mean_best,stderr\n";
  for (const SummaryRow& r : rows)
    out << r.strategy << "," << r.iter << "," << fmt_double(r.mean_best) << ","
        << fmt_double(r.stderr_best) << "\n";
  return out.str();
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::vector<SummaryRow> rows;
  while (std::getline(in, raw)) {
    ++line;
    std::string entry = trim(raw);
    if (entry.empty()) continue;
    if (line == 1) {
      if (entry != "strategy,iter,mean_best,stderr")
        throw ConfigError("line 1: expected header strategy,iter,mean_best,stderr");
      continue;
    }
    std::vector<std::string> fields = split(entry, ',');
    if (fields.size() != 4)
      throw ConfigError("line " + std::to_string(line) + ": expected 4 fields, got " +
                        std::to_string(fields.size()));
    SummaryRow r;
    r.strategy = trim(fields[0]);
    if (r.strategy.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty strategy name");
    r.iter = static_cast<int>(parse_int(trim(fields[1]), line));
    r.mean_best = parse_double(trim(fields[2]), line);
    r.stderr_best = parse_double(trim(fields[3]), line);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct ChartScale {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt_svg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_chart_svg(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw ConfigError("render_chart: empty summary, nothing to draw");

  std::vector<std::string> strategies;
  for (const SummaryRow& r : rows)
    if (std::find(strategies.begin(), strategies.end(), r.strategy) ==
        strategies.end())
      strategies.push_back(r.strategy);

  double x_lo = rows[0].iter, x_hi = rows[0].iter;
  double y_lo = rows[0].mean_best - rows[0].stderr_best;
  double y_hi = rows[0].mean_best + rows[0].stderr_best;
  for (const SummaryRow& r : rows) {
    x_lo = std::min(x_lo, static_cast<double>(r.iter));
    x_hi = std::max(x_hi, static_cast<double>(r.iter));
    y_lo = std::min(y_lo, r.mean_best - r.stderr_best);
    y_hi = std::max(y_hi, r.mean_best + r.stderr_best);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  double pad = (y_hi - y_lo) * 0.05;
  if (pad == 0.0) pad = std::max(1.0, std::abs(y_hi) * 0.05);
  y_lo -= pad;
  y_hi += pad;

  const double W = 800, H = 500, L = 70, R = 640, T = 20, B = 460;
  ChartScale sx{x_lo, x_hi, L, R};
  ChartScale sy{y_lo, y_hi, B, T};  // SVG y grows downward

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << B << "\" x2=\"" << R << "\" y2=\"" << B
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << B
      << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    double xv = x_lo + (x_hi - x_lo) * i / 5.0;
    double yv = y_lo + (y_hi - y_lo) * i / 5.0;
    svg << "<text x=\"" << fmt_svg(sx(xv)) << "\" y=\"" << B + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_svg(xv) << "</text>\n";
    svg << "<text x=\"" << L - 6 << "\" y=\"" << fmt_svg(sy(yv) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_svg(yv) << "</text>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << fmt_svg(sy(yv)) << "\" x2=\"" << R
        << "\" y2=\"" << fmt_svg(sy(yv))
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  }
  svg << "<text x=\"" << (L + R) / 2 << "\" y=\"" << H - 6
      << "\" font-size=\"12\" text-anchor=\"middle\">iteration</text>\n";

  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const std::string& name = strategies[s];
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    std::vector<const SummaryRow*> pts;
    for (const SummaryRow& r : rows)
      if (r.strategy == name) pts.push_back(&r);

    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" "
        << "points=\"";
    for (const SummaryRow* p : pts)
      svg << fmt_svg(sx(p->iter)) << "," << fmt_svg(sy(p->mean_best + p->stderr_best))
          << " ";
    for (auto it = pts.rbegin(); it != pts.rend(); ++it)
      svg << fmt_svg(sx((*it)->iter)) << ","
          << fmt_svg(sy((*it)->mean_best - (*it)->stderr_best)) << " ";
    svg << "\"/>\n";

    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
        << "points=\"";
    for (const SummaryRow* p : pts)
      svg << fmt_svg(sx(p->iter)) << "," << fmt_svg(sy(p->mean_best)) << " ";
    svg << "\"/>\n";

    double ly = T + 16 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << R + 10 << "\" y1=\"" << fmt_svg(ly - 4) << "\" x2=\""
        << R + 30 << "\" y2=\"" << fmt_svg(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << R + 36 << "\" y=\"" << fmt_svg(ly)
        << "\" font-size=\"12\">" << name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string resolve_out_dir(const std::string& flag_value,
                            const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (!config_value.empty()) return config_value;
  const char* env = std::getenv("BOMI_OUT_DIR");
  if (env && *env) return env;
  return "results";
}

sim::Objective external_objective(const std::string& command, double timeout_sec) {
  if (trim(command).empty())
    throw std::invalid_argument("external_objective: empty command");
  return [command, timeout_sec](const Eigen::VectorXd& x) -> double {
    std::ostringstream cmd;
    if (timeout_sec > 0.0) cmd << "timeout " << fmt_short(timeout_sec) << " ";
    cmd << command;
    for (Eigen::Index i = 0; i < x.size(); ++i) cmd << " " << fmt_double(x[i]);
    cmd << " 2>&1";

    FILE* pipe = popen(cmd.str().c_str(), "r");
    if (!pipe) throw std::runtime_error("external objective: popen failed");
    std::string output;
    char buf[256];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    int status = pclose(pipe);

    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code == 124)
      throw std::runtime_error("external objective timed out: " + cmd.str());
    if (code != 0)
      throw std::runtime_error("external objective exited with code " +
                               std::to_string(code) + "; output: " + output);
    std::string body = trim(output);
    char* end = nullptr;
    double y = std::strtod(body.c_str(), &end);
    if (end == body.c_str() || trim(end) != "" || !std::isfinite(y))
      throw std::runtime_error("external objective produced unparseable output: '" +
                               output + "'");
    return y;
  };
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir) {
  cfg.validate();
  ResolvedObjective obj = resolve_objective(cfg);
  const int d = obj.domain.dims();
  try {
    cfg.missing.validate(d);
    acq::BetaSchedule probe(d, cfg.strategy.delta, cfg.strategy.beta_a,
                            cfg.strategy.beta_b, 1.0);
    (void)probe;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  fs::create_directories(out_dir);

  struct Job {
    StrategyKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const StrategyKind& kind : cfg.strategies)
    for (int rep = 0; rep < cfg.repeats; ++rep)
      jobs.push_back({kind, cfg.seed + static_cast<std::uint64_t>(rep)});

  ExperimentResult result;
  result.runs.resize(jobs.size());

  auto execute = [&](std::size_t i) {
    RunOutcome& out = result.runs[i];
    out.kind = jobs[i].kind;
    out.seed = jobs[i].seed;
    try {
      RngStream root(jobs[i].seed);
      Dataset init = sim::gen_historical(obj.f, obj.domain, cfg.n_init, cfg.missing,
                                         root.substream("init-data"));
      out.trace = run_loop(obj.f, obj.domain, jobs[i].kind, cfg.iterations,
                           cfg.missing, init, cfg.strategy, root);
      std::string name = out_dir + "/trace_" + jobs[i].kind.name() + "_seed" +
                         std::to_string(jobs[i].seed) + ".csv";
      write_file_atomic(name, format_trace_csv(out.trace, d));
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  };

  int width = std::min<int>(cfg.jobs, static_cast<int>(jobs.size()));
  if (width <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) execute(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        execute(i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (int w = 0; w < width; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (result.failed() > 0) {
    std::ostringstream log;
    for (const RunOutcome& r : result.runs)
      if (!r.ok)
        log << r.kind.name() << " seed=" << r.seed << ": " << r.error << "\n";
    write_file_atomic(out_dir + "/failures.log", log.str());
  }

  write_file_atomic(out_dir + "/summary.csv",
                    format_summary_csv(summarize(cfg, result)));
  return result;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& cfg, const std::string& axis,
                              const std::vector<double>& values,
                              const std::string& out_root) {
  if (axis != "rho" && axis != "eta" && axis != "v")
    throw ConfigError("sweep: axis must be rho, eta or v, got '" + axis + "'");
  if (values.empty()) throw ConfigError("sweep: no axis values given");

  std::vector<SweepPoint> points;
  for (double value : values) {
    ExperimentConfig c = cfg;
    if (axis == "rho") {
      c.missing.rho = value;
    } else if (axis == "eta") {
      c.missing.eta = value;
    } else {
      if (value != std::floor(value) || value < 1)
        throw ConfigError("sweep: v values must be positive integers");
      c.missing.max_dims = static_cast<int>(value);
    }
    std::string sub = out_root + "/" + axis + "_" + fmt_short(value);
    SweepPoint p;
    p.value = value;
    p.result = run_experiment(c, sub);
    points.push_back(std::move(p));
  }

  std::ostringstream csv;
  csv << "axis,value,strategy,final_mean_best,stderr\n";
  for (const SweepPoint& p : points) {
    ExperimentConfig c = cfg;  // summarize needs iteration/repeat shape only
    std::vector<SummaryRow> rows = summarize(c, p.result);
    for (const SummaryRow& r : rows)
      if (r.iter == cfg.iterations)
        csv << axis << "," << fmt_short(p.value) << "," << r.strategy << ","
            << fmt_double(r.mean_best) << "," << fmt_double(r.stderr_best) << "\n";
  }
  write_file_atomic(out_root + "/sweep_" + axis + ".csv", csv.str());
  return points;
}

}  // namespace bomi::harness
