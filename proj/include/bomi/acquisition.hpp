#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bomi/core.hpp"
#include "bomi/gp.hpp"
#include "bomi/rng.hpp"

namespace bomi::acq {

// Exploration weight schedule for maximization with high-probability regret
// control: beta(t) grows like O(log t) and is positive for every t >= 1.
class BetaSchedule {
public:
  BetaSchedule(int dims, double delta, double a, double b, double r);
  double beta(int t) const;

private:
  double dims_;
  double delta_;
  double a_;
  double b_;
  double r_;
};

// mean + sqrt(beta * variance)
double ucb(const gp::Model& model, double beta, const Eigen::VectorXd& x);

// Mean of one score per surface plus beta_alpha times their sample standard
// deviation (divisor Q-1; no spread term when Q == 1). Bitwise-equal scores
// return the first unchanged, so a degenerate ensemble collapses exactly.
double aggregate(const std::vector<double>& surface_scores, double beta_alpha);

// Aggregate of one upper-confidence surface per model: mean across models
// plus beta_alpha times their sample standard deviation (divisor Q-1, zero
// when Q == 1). When every surface value is bitwise identical the first is
// returned unchanged, so a degenerate ensemble reduces exactly to ucb().
double ucb_mi(const std::vector<gp::Model>& models, double beta,
              double beta_alpha, const Eigen::VectorXd& x);

struct MaximizeResult {
  Eigen::VectorXd x;
  double value;
};

// Deterministic given the rng state: scores `candidates` uniform draws plus
// the seed points, then polishes the best starts with coordinate-wise
// golden-section line searches. Returns the best point ever evaluated; ties
// keep the earliest. Throws if f returns a non-finite value.
MaximizeResult maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Domain& box, RngStream& rng,
                        const std::vector<Eigen::VectorXd>& seeds = {},
                        int candidates = 2000);

}  // namespace bomi::acq
