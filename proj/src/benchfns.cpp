#include "bomi/benchfns.hpp"

#include <cmath>
#include <stdexcept>

namespace bomi::bench {

namespace {

double eggholder(const Eigen::VectorXd& x) {
  double a = x[1] + 47.0;
  double t1 = -a * std::sin(std::sqrt(std::abs(x[1] + x[0] / 2.0 + 47.0)));
  double t2 = -x[0] * std::sin(std::sqrt(std::abs(x[0] - a)));
  return -(t1 + t2);
}

double schubert(const Eigen::VectorXd& x) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (int j = 1; j <= 5; ++j) s += j * std::cos((j + 1) * x[i] + j);
    prod *= s;
  }
  return -prod;
}

double alpine(const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    s += std::abs(x[i] * std::sin(x[i]) + 0.1 * x[i]);
  return -s;
}

double schwefel(const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    s += x[i] * std::sin(std::sqrt(std::abs(x[i])));
  return -(418.9829 * static_cast<double>(x.size()) - s);
}

Domain box(int dims, double lo, double hi) {
  return Domain(Eigen::VectorXd::Constant(dims, lo),
                Eigen::VectorXd::Constant(dims, hi));
}

std::vector<Function> make_registry() {
  std::vector<Function> fns;

  {
    Function f{"eggholder2", 2, box(2, -512.0, 512.0), eggholder, std::nullopt};
    Eigen::VectorXd best(2);
    best << 512.0, 404.2319;
    f.known_best = {{best, f.eval(best)}};
    fns.push_back(std::move(f));
  }
  fns.push_back({"schubert4", 4, box(4, -10.0, 10.0), schubert, std::nullopt});
  {
    Function f{"alpine5", 5, box(5, -10.0, 10.0), alpine, std::nullopt};
    f.known_best = {{Eigen::VectorXd::Zero(5), 0.0}};
    fns.push_back(std::move(f));
  }
  {
    Function f{"schwefel5", 5, box(5, -500.0, 500.0), schwefel, std::nullopt};
    Eigen::VectorXd best = Eigen::VectorXd::Constant(5, 420.9687);
    f.known_best = {{best, f.eval(best)}};
    fns.push_back(std::move(f));
  }
  return fns;
}

}  // namespace

const std::vector<Function>& registry() {
  static const std::vector<Function> fns = make_registry();
  return fns;
}

const Function* find(std::string_view id) {
  for (const Function& f : registry())
    if (f.id == id) return &f;
  return nullptr;
}

double eval_function(std::string_view id, const Eigen::VectorXd& x) {
  const Function* f = find(id);
  if (!f) throw std::invalid_argument("unknown function '" + std::string(id) + "'");
  if (x.size() != f->dims)
    throw std::invalid_argument(f->id + ": expected " + std::to_string(f->dims) +
                                " dims, got " + std::to_string(x.size()));
  if (!f->domain.contains(x))
    throw std::invalid_argument(f->id + ": point outside the domain");
  return f->eval(x);
}

}  // namespace bomi::bench
