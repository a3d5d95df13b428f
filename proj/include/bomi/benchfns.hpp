#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bomi/core.hpp"

namespace bomi::bench {

// Synthetic benchmark as a maximization objective (classic minimization
// forms are negated).
struct Function {
  std::string id;
  int dims;
  Domain domain;
  std::function<double(const Eigen::VectorXd&)> eval;
  std::optional<std::pair<Eigen::VectorXd, double>> known_best;
};

// eggholder2, schubert4, alpine5, schwefel5 — in this order.
const std::vector<Function>& registry();

// nullptr when the id is unknown.
const Function* find(std::string_view id);

// Checked evaluation: dimension and domain membership enforced.
double eval_function(std::string_view id, const Eigen::VectorXd& x);

}  // namespace bomi::bench
