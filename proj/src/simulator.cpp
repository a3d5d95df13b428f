#include "bomi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bomi::sim {

void MissingModel::validate(int dims) const {
  if (!(rho >= 0.0) || !(rho <= 1.0))
    throw std::invalid_argument("MissingModel: rho must lie in [0,1]");
  if (!(eta >= 0.0)) throw std::invalid_argument("MissingModel: eta must be >= 0");
  if (!(hist_frac >= 0.0) || !(hist_frac <= 1.0))
    throw std::invalid_argument("MissingModel: hist_frac must lie in [0,1]");
  if (max_dims < 1 || max_dims > dims - 1)
    throw std::invalid_argument("MissingModel: need 1 <= v <= d-1, got v=" +
                                std::to_string(max_dims) + " with d=" +
                                std::to_string(dims));
  for (auto [dim, frac] : eta_override) {
    if (dim < 0 || dim >= dims)
      throw std::invalid_argument("MissingModel: eta override for bad dim " +
                                  std::to_string(dim));
    if (!(frac >= 0.0))
      throw std::invalid_argument("MissingModel: eta override must be >= 0");
  }
}

Dataset gen_historical(const Objective& f, const Domain& domain, int n,
                       const MissingModel& mm, RngStream rng) {
  if (n < 1) throw std::invalid_argument("gen_historical: n must be >= 1");
  mm.validate(domain.dims());
  const int d = domain.dims();

  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j)
      x[j] = domain.lower()[j] + rng.uniform01() * domain.range(j);
    double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "gen_historical: objective returned a non-finite value at (";
      for (int j = 0; j < d; ++j) msg << (j ? ", " : "") << x[j];
      msg << ")";
      throw std::runtime_error(msg.str());
    }
    points.push_back(std::move(x));
    values.push_back(y);
  }

  std::vector<BoolArray> masks(n, BoolArray::Constant(d, true));
  const int corrupt = static_cast<int>(std::floor(mm.hist_frac * n));
  for (int row : rng.subset(n, corrupt)) {
    int m = 1 + rng.uniform_int(mm.max_dims);
    for (int dim : rng.subset(d, m)) masks[row][dim] = false;
  }

  Dataset ds(domain);
  for (int i = 0; i < n; ++i)
    ds.add(PartialPoint(points[i], masks[i]), values[i], -1);
  return ds;
}

EventResult apply_missing_event(const Eigen::VectorXd& x, const Domain& domain,
                                const MissingModel& mm, RngStream& rng) {
  mm.validate(domain.dims());
  if (!domain.contains(x))
    throw std::invalid_argument("apply_missing_event: point out of bounds");
  const int d = domain.dims();

  bool event = rng.uniform01() < mm.rho;
  int m = 1 + rng.uniform_int(mm.max_dims);
  std::vector<int> dims = rng.subset(d, m);
  std::vector<double> signs(m);
  for (int i = 0; i < m; ++i) signs[i] = rng.uniform01() < 0.5 ? -1.0 : 1.0;

  if (!event) return {x, PartialPoint(x), false};

  Eigen::VectorXd actual = x;
  BoolArray mask = BoolArray::Constant(d, true);
  for (int i = 0; i < m; ++i) {
    int dim = dims[i];
    auto it = mm.eta_override.find(dim);
    double frac = it == mm.eta_override.end() ? mm.eta : it->second;
    double shifted = x[dim] + signs[i] * frac * domain.range(dim);
    actual[dim] = std::clamp(shifted, domain.lower()[dim], domain.upper()[dim]);
    mask[dim] = false;
  }
  return {std::move(actual), PartialPoint(x, mask), true};
}

}  // namespace bomi::sim
