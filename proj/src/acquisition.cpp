#include "bomi/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bomi::acq {

BetaSchedule::BetaSchedule(int dims, double delta, double a, double b, double r)
    : dims_(dims), delta_(delta), a_(a), b_(b), r_(r) {
  if (dims < 1) throw std::invalid_argument("BetaSchedule: dims must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("BetaSchedule: delta must lie in (0,1)");
  if (!(a > 0.0) || !(b > 0.0) || !(r > 0.0))
    throw std::invalid_argument("BetaSchedule: a, b, r must be positive");
  if (!(4.0 * dims_ * a_ / delta_ > 1.0))
    throw std::invalid_argument(
        "BetaSchedule: 4*d*a/delta must exceed 1 for a positive inner log");
  double b1 = beta(1);
  if (!std::isfinite(b1) || !(b1 > 0.0))
    throw std::invalid_argument("BetaSchedule: constants give a non-positive beta(1)");
}

double BetaSchedule::beta(int t) const {
  if (t < 1) throw std::invalid_argument("BetaSchedule: t must be >= 1");
  const double t2 = static_cast<double>(t) * t;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double term1 = 2.0 * std::log(t2 * 2.0 * pi2 / (3.0 * delta_));
  double inner = std::sqrt(std::log(4.0 * dims_ * a_ / delta_));
  double term2 = 2.0 * dims_ * std::log(t2 * dims_ * b_ * r_ * inner);
  return term1 + term2;
}

double ucb(const gp::Model& model, double beta, const Eigen::VectorXd& x) {
  if (!(beta >= 0.0)) throw std::invalid_argument("ucb: beta must be non-negative");
  gp::Prediction p = model.predict(x);
  return p.mean + std::sqrt(beta * p.var);
}

double aggregate(const std::vector<double>& surface_scores, double beta_alpha) {
  if (surface_scores.empty())
    throw std::invalid_argument("aggregate: no surface scores");
  if (!(beta_alpha >= 0.0))
    throw std::invalid_argument("aggregate: beta_alpha < 0");
  const int q = static_cast<int>(surface_scores.size());
  const std::vector<double>& vals = surface_scores;

  bool all_equal = std::all_of(vals.begin(), vals.end(),
                               [&](double v) { return v == vals[0]; });
  if (all_equal || q == 1) return vals[0];

  double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / q;
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  return mean + beta_alpha * std::sqrt(ss / (q - 1));
}

double ucb_mi(const std::vector<gp::Model>& models, double beta,
              double beta_alpha, const Eigen::VectorXd& x) {
  if (models.empty()) throw std::invalid_argument("ucb_mi: no models");
  if (!(beta_alpha >= 0.0)) throw std::invalid_argument("ucb_mi: beta_alpha < 0");
  std::vector<double> vals(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) vals[i] = ucb(models[i], beta, x);
  return aggregate(vals, beta_alpha);
}

namespace {

std::string point_to_string(const Eigen::VectorXd& x) {
  std::ostringstream s;
  s << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s << (i ? ", " : "") << x[i];
  s << ")";
  return s.str();
}

}  // namespace

MaximizeResult maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Domain& box, RngStream& rng,
                        const std::vector<Eigen::VectorXd>& seeds, int candidates) {
  if (candidates < 1) throw std::invalid_argument("maximize: need candidates >= 1");
  const int d = box.dims();

  Eigen::VectorXd best_x;
  double best_val = -std::numeric_limits<double>::infinity();
  auto eval = [&](const Eigen::VectorXd& x) {
    double v = f(x);
    if (!std::isfinite(v))
      throw std::runtime_error("maximize: non-finite acquisition value at " +
                               point_to_string(x));
    if (v > best_val) {
      best_val = v;
      best_x = x;
    }
    return v;
  };

  std::vector<Eigen::VectorXd> points;
  points.reserve(candidates + seeds.size());
  for (int c = 0; c < candidates; ++c) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j)
      x[j] = box.lower()[j] + rng.uniform01() * box.range(j);
    points.push_back(std::move(x));
  }
  for (const Eigen::VectorXd& s : seeds) {
    if (!box.contains(s))
      throw std::invalid_argument("maximize: seed point outside the box " +
                                  point_to_string(s));
    points.push_back(s);
  }

  std::vector<double> vals(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) vals[i] = eval(points[i]);

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t starts = std::min<std::size_t>(10, order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (vals[a] != vals[b]) return vals[a] > vals[b];
                      return a < b;
                    });

  constexpr double invphi = 0.6180339887498949;
  constexpr int line_searches = 50;
  constexpr int golden_steps = 18;
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x = points[order[s]];
    double fx = vals[order[s]];
    for (int search = 0; search < line_searches; ++search) {
      int c = search % d;
      double half = 0.25 * box.range(c);
      double a = std::max(box.lower()[c], x[c] - half);
      double b = std::min(box.upper()[c], x[c] + half);
      auto line = [&](double t) {
        Eigen::VectorXd p = x;
        p[c] = t;
        return eval(p);
      };
      double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
      double f1 = line(x1), f2 = line(x2);
      for (int it = 0; it < golden_steps; ++it) {
        if (f1 >= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - invphi * (b - a);
          f1 = line(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + invphi * (b - a);
          f2 = line(x2);
        }
      }
      double ft = std::max(f1, f2);
      if (ft > fx) {
        x[c] = f1 >= f2 ? x1 : x2;
        fx = ft;
      }
    }
  }

  return {best_x, best_val};
}

}  // namespace bomi::acq
