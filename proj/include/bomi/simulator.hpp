#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>

#include "bomi/core.hpp"
#include "bomi/rng.hpp"

namespace bomi::sim {

// Corruption process: with probability rho an evaluation is hit by a missing
// event that shifts up to max_dims coordinates by +-eta * range and masks
// them in the stored record; historical data has hist_frac of its rows masked
// (coordinates only — the measured value is kept).
struct MissingModel {
  double rho = 0.25;
  double eta = 0.05;
  int max_dims = 1;  // v; at least one dim always stays observed
  double hist_frac = 0.8;
  std::map<int, double> eta_override;  // per-dim shift fractions

  void validate(int dims) const;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// n uniform points with y evaluated at the true location, then
// floor(hist_frac * n) rows drawn without replacement get m ~ Uniform{1..v}
// coordinates masked. rng is consumed by value: the caller hands over a
// dedicated substream.
Dataset gen_historical(const Objective& f, const Domain& domain, int n,
                       const MissingModel& mm, RngStream rng);

struct EventResult {
  Eigen::VectorXd evaluated;  // the point the objective actually sees
  PartialPoint stored;        // suggestion with affected dims masked
  bool event = false;
};

// The event coin, affected-dim count, dim subset and signs are always drawn,
// even when the coin lands no-event, so the stream's position never depends
// on outcomes or on eta.
EventResult apply_missing_event(const Eigen::VectorXd& x, const Domain& domain,
                                const MissingModel& mm, RngStream& rng);

}  // namespace bomi::sim
