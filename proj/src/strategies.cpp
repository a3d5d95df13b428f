#include "bomi/strategies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "bomi/gp.hpp"

namespace bomi {

namespace {

gp::Model fit_complete(const Dataset& ds, const StrategyConfig& cfg) {
  MatrixView mv = as_matrix(ds);
  const Eigen::Index d = mv.input_cols();
  gp::FitOptions opts;
  opts.noise2 = cfg.gp_noise2;
  return gp::fit(mv.m.values.leftCols(d), mv.m.values.col(d), opts);
}

// Normalized complete rows of the original dataset: the deterministic seed
// points every strategy hands to the maximizer.
std::vector<Eigen::VectorXd> observed_seeds(const Dataset& ds) {
  std::vector<Eigen::VectorXd> seeds;
  for (const Row& r : ds.rows())
    if (r.x.complete()) seeds.push_back(normalize(ds.domain(), r.x.full()));
  return seeds;
}

Eigen::VectorXd ucb_suggest(const std::vector<gp::Model>& models,
                            const Dataset& origin, int t,
                            const StrategyConfig& cfg, RngStream& acq) {
  acq::BetaSchedule sched(origin.dims(), cfg.delta, cfg.beta_a, cfg.beta_b, 1.0);
  const double beta = sched.beta(t);
  auto f = [&](const Eigen::VectorXd& x) {
    return acq::ucb_mi(models, beta, cfg.beta_alpha, x);
  };
  acq::MaximizeResult res = acq::maximize(f, Domain::unit(origin.dims()), acq,
                                          observed_seeds(origin),
                                          cfg.acq_candidates);
  return denormalize(origin.domain(), res.x);
}

}  // namespace

StrategyKind StrategyKind::parse(std::string_view name) {
  if (name == "bomi") return {StrategyType::bomi};
  if (name == "dropbo") return {StrategyType::dropbo};
  if (name == "suggestbo") return {StrategyType::suggestbo};
  constexpr std::string_view prefix = "imputation-";
  if (name.substr(0, prefix.size()) == prefix)
    return {StrategyType::imputation, imputers::parse_kind(name.substr(prefix.size()))};
  throw std::invalid_argument(
      "unknown strategy '" + std::string(name) +
      "' (expected bomi, imputation-{mean,mode,knn,bpmf}, dropbo or suggestbo)");
}

std::string StrategyKind::name() const {
  switch (type) {
    case StrategyType::bomi: return "bomi";
    case StrategyType::dropbo: return "dropbo";
    case StrategyType::suggestbo: return "suggestbo";
    case StrategyType::imputation: return "imputation-" + imputers::kind_name(imputer);
  }
  throw std::logic_error("StrategyKind::name: bad enum");
}

Eigen::VectorXd bomi_step(const Dataset& ds, int t, const StrategyConfig& cfg,
                          RngStream& gibbs, RngStream& acq) {
  if (ds.empty()) throw std::invalid_argument("bomi_step: empty dataset");
  std::vector<Dataset> completions = bpmf::sample_completions(ds, cfg.bpmf, gibbs);
  std::vector<gp::Model> models;
  models.reserve(completions.size());
  for (const Dataset& comp : completions) models.push_back(fit_complete(comp, cfg));
  return ucb_suggest(models, ds, t, cfg, acq);
}

Eigen::VectorXd imputation_bo_step(const Dataset& ds, imputers::Kind imputer, int t,
                                   const StrategyConfig& cfg, RngStream& gibbs,
                                   RngStream& acq) {
  if (ds.empty()) throw std::invalid_argument("imputation_bo_step: empty dataset");
  Dataset imputed = imputers::impute(ds, imputer, cfg.knn_k, cfg.bpmf, gibbs);
  std::vector<gp::Model> models;
  models.push_back(fit_complete(imputed, cfg));
  return ucb_suggest(models, ds, t, cfg, acq);
}

Eigen::VectorXd dropbo_step(const Dataset& ds, int t, const StrategyConfig& cfg,
                            RngStream& acq) {
  Dataset kept = ds.complete_rows();
  if (kept.empty())
    throw NoCompleteRowsError("dropbo_step: no complete rows to train on");
  std::vector<gp::Model> models;
  models.push_back(fit_complete(kept, cfg));
  return ucb_suggest(models, ds, t, cfg, acq);
}

Dataset suggestbo_prepare(const Dataset& ds,
                          const std::vector<Eigen::VectorXd>& suggestion_log) {
  Dataset out(ds.domain());
  const int d = ds.dims();
  for (const Row& r : ds.rows()) {
    if (r.x.complete()) {
      out.add(r.x, r.y, r.origin);
      continue;
    }
    if (r.origin < 1) continue;  // incomplete initial rows are dropped
    if (r.origin > static_cast<int>(suggestion_log.size()))
      throw std::logic_error("suggestbo_prepare: row from iteration " +
                             std::to_string(r.origin) + " has no logged suggestion");
    const Eigen::VectorXd& intended = suggestion_log[r.origin - 1];
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j)
      x[j] = r.x.observed(j) ? r.x.value(j) : intended[j];
    out.add(PartialPoint(x), r.y, r.origin);
  }
  return out;
}

Eigen::VectorXd suggestbo_step(const Dataset& ds,
                               const std::vector<Eigen::VectorXd>& suggestion_log,
                               int t, const StrategyConfig& cfg, RngStream& acq) {
  Dataset prepared = suggestbo_prepare(ds, suggestion_log);
  if (prepared.empty())
    throw NoCompleteRowsError("suggestbo_step: no usable rows to train on");
  std::vector<gp::Model> models;
  models.push_back(fit_complete(prepared, cfg));
  return ucb_suggest(models, ds, t, cfg, acq);
}

Trace run_loop(const sim::Objective& f, const Domain& domain, StrategyKind kind,
               int iterations, const sim::MissingModel& mm, const Dataset& init,
               const StrategyConfig& cfg, const RngStream& root) {
  if (iterations < 1) throw std::invalid_argument("run_loop: iterations must be >= 1");
  if (init.empty()) throw std::invalid_argument("run_loop: empty initial dataset");
  mm.validate(domain.dims());
  cfg.bpmf.validate();

  RngStream gibbs = root.substream("gibbs");
  RngStream acq = root.substream("acq-opt");
  RngStream events = root.substream("missing-events");

  Trace trace;
  trace.strategy = kind.name();
  trace.seed = root.seed();

  Dataset ds = init;
  double best = -std::numeric_limits<double>::infinity();
  for (const Row& r : init.rows()) {
    best = std::max(best, r.y);
    trace.records.push_back({0, r.x, false, false, r.y, best, 0.0});
  }

  std::vector<Eigen::VectorXd> suggestion_log;
  suggestion_log.reserve(iterations);

  for (int t = 1; t <= iterations; ++t) {
    auto start = std::chrono::steady_clock::now();
    Eigen::VectorXd suggestion;
    bool fallback = false;
    try {
      switch (kind.type) {
        case StrategyType::bomi:
          suggestion = bomi_step(ds, t, cfg, gibbs, acq);
          break;
        case StrategyType::imputation:
          suggestion = imputation_bo_step(ds, kind.imputer, t, cfg, gibbs, acq);
          break;
        case StrategyType::dropbo:
          suggestion = dropbo_step(ds, t, cfg, acq);
          break;
        case StrategyType::suggestbo:
          suggestion = suggestbo_step(ds, suggestion_log, t, cfg, acq);
          break;
      }
    } catch (const NoCompleteRowsError&) {
      suggestion.resize(domain.dims());
      for (int j = 0; j < domain.dims(); ++j)
        suggestion[j] = domain.lower()[j] + acq.uniform01() * domain.range(j);
      fallback = true;
    }
    suggestion_log.push_back(suggestion);

    sim::EventResult ev = sim::apply_missing_event(suggestion, domain, mm, events);
    double y = f(ev.evaluated);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "run_loop: objective returned a non-finite value at (";
      for (int j = 0; j < domain.dims(); ++j)
        msg << (j ? ", " : "") << ev.evaluated[j];
      msg << ")";
      throw std::runtime_error(msg.str());
    }

    bool retained = !ev.event || kind.retains_event_observations();
    if (retained) {
      ds.add(ev.stored, y, t);
      best = std::max(best, y);
    }

    double wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    trace.records.push_back({t, ev.stored, ev.event, fallback,
                             retained ? std::optional<double>(y) : std::nullopt,
                             best, wall_ms});
  }
  return trace;
}

}  // namespace bomi
