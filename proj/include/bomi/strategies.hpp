#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bomi/acquisition.hpp"
#include "bomi/bpmf.hpp"
#include "bomi/core.hpp"
#include "bomi/imputers.hpp"
#include "bomi/rng.hpp"
#include "bomi/simulator.hpp"

namespace bomi {

// Raised by steps that train on complete rows only, when none remain; the
// loop answers with a uniform random suggestion.
struct NoCompleteRowsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StrategyType { bomi, imputation, dropbo, suggestbo };

struct StrategyKind {
  StrategyType type = StrategyType::bomi;
  imputers::Kind imputer = imputers::Kind::mean;  // used when type == imputation

  // bomi | imputation-{mean,mode,knn,bpmf} | dropbo | suggestbo
  static StrategyKind parse(std::string_view name);
  std::string name() const;

  // DropBO discards the observation made under a missing event entirely; all
  // other strategies keep the partially-masked row.
  bool retains_event_observations() const { return type != StrategyType::dropbo; }
};

struct StrategyConfig {
  bpmf::Config bpmf;
  int knn_k = 5;
  double beta_alpha = 1.0;
  double delta = 0.1;  // schedule confidence parameter
  double beta_a = 1.0;
  double beta_b = 1.0;
  double gp_noise2 = 1e-6;
  int acq_candidates = 2000;
};

struct TraceRecord {
  int iter = 0;           // 0 for initial-data rows
  PartialPoint stored;    // what entered (or would have entered) the dataset
  bool event = false;
  bool fallback = false;  // suggestion came from the uniform fallback
  std::optional<double> y;  // empty when the strategy discarded the observation
  double best_y = 0.0;
  double wall_ms = 0.0;
};

struct Trace {
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;  // one per initial row, then one per iteration
};

// One-step suggestion engines. All return a complete point in the original
// domain. gibbs and acq are distinct substreams owned by the caller; t is the
// 1-based iteration feeding the exploration schedule.
Eigen::VectorXd bomi_step(const Dataset& ds, int t, const StrategyConfig& cfg,
                          RngStream& gibbs, RngStream& acq);
Eigen::VectorXd imputation_bo_step(const Dataset& ds, imputers::Kind imputer, int t,
                                   const StrategyConfig& cfg, RngStream& gibbs,
                                   RngStream& acq);
Eigen::VectorXd dropbo_step(const Dataset& ds, int t, const StrategyConfig& cfg,
                            RngStream& acq);
Eigen::VectorXd suggestbo_step(const Dataset& ds,
                               const std::vector<Eigen::VectorXd>& suggestion_log,
                               int t, const StrategyConfig& cfg, RngStream& acq);

// SuggestBO's dataset surgery, exposed for inspection: incomplete initial
// rows are dropped; a row from iteration k has its masked dims replaced by
// suggestion_log[k-1]'s coordinates.
Dataset suggestbo_prepare(const Dataset& ds,
                          const std::vector<Eigen::VectorXd>& suggestion_log);

// Algorithm: per iteration, suggest -> possibly corrupt the evaluation ->
// evaluate -> augment. Substreams (gibbs, acq-opt, missing-events) are
// derived from root; init must come from the caller (root's init-data
// substream in the harness, shared across strategies).
Trace run_loop(const sim::Objective& f, const Domain& domain, StrategyKind kind,
               int iterations, const sim::MissingModel& mm, const Dataset& init,
               const StrategyConfig& cfg, const RngStream& root);

}  // namespace bomi
