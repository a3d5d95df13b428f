#include "bomi/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bomi {

Domain::Domain(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("Domain: bound lengths differ");
  if (lower_.size() == 0) throw std::invalid_argument("Domain: zero dimensions");
  for (int i = 0; i < dims(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) ||
        !(lower_[i] < upper_[i]))
      throw std::invalid_argument("Domain: need finite lower < upper in dim " +
                                  std::to_string(i));
  }
}

Domain Domain::unit(int dims) {
  return Domain(Eigen::VectorXd::Zero(dims), Eigen::VectorXd::Ones(dims));
}

bool Domain::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower_.size()) return false;
  return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

Eigen::VectorXd Domain::clamp(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

PartialPoint::PartialPoint(const Eigen::VectorXd& values)
    : PartialPoint(values, BoolArray::Constant(values.size(), true)) {}

PartialPoint::PartialPoint(const Eigen::VectorXd& values, const BoolArray& observed)
    : values_(values), observed_(observed) {
  if (values_.size() != observed_.size())
    throw std::invalid_argument("PartialPoint: mask length differs from values");
  for (int i = 0; i < dims(); ++i) {
    if (observed_[i]) {
      if (!std::isfinite(values_[i]))
        throw std::invalid_argument("PartialPoint: non-finite value in dim " +
                                    std::to_string(i));
    } else {
      values_[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
}

bool PartialPoint::complete() const { return observed_.all(); }

int PartialPoint::observed_count() const {
  return static_cast<int>(observed_.count());
}

bool PartialPoint::observed(int i) const {
  if (i < 0 || i >= dims()) throw std::out_of_range("PartialPoint: dim out of range");
  return observed_[i];
}

double PartialPoint::value(int i) const {
  if (!observed(i))
    throw std::logic_error("PartialPoint: read of unobserved dim " + std::to_string(i));
  return values_[i];
}

Eigen::VectorXd PartialPoint::full() const {
  if (!complete()) throw std::logic_error("PartialPoint: full() on incomplete point");
  return values_;
}

Dataset::Dataset(Domain domain) : domain_(std::move(domain)) {}

void Dataset::add(PartialPoint x, double y, int origin) {
  if (x.dims() != dims())
    throw std::invalid_argument("Dataset: point dimension mismatch");
  if (!std::isfinite(y)) throw std::invalid_argument("Dataset: non-finite y");
  rows_.push_back(Row{std::move(x), y, origin});
}

bool Dataset::complete() const {
  for (const Row& r : rows_)
    if (!r.x.complete()) return false;
  return true;
}

long Dataset::missing_cells() const {
  long n = 0;
  for (const Row& r : rows_) n += r.x.dims() - r.x.observed_count();
  return n;
}

Dataset Dataset::complete_rows() const {
  Dataset out(domain_);
  for (const Row& r : rows_)
    if (r.x.complete()) out.add(r.x, r.y, r.origin);
  return out;
}

double normalize_coord(const Domain& d, int i, double v) {
  return (v - d.lower()[i]) / d.range(i);
}

double denormalize_coord(const Domain& d, int i, double v) {
  return d.lower()[i] + v * d.range(i);
}

Eigen::VectorXd normalize(const Domain& d, const Eigen::VectorXd& x) {
  if (x.size() != d.dims()) throw std::invalid_argument("normalize: dimension mismatch");
  return (x - d.lower()).cwiseQuotient(d.upper() - d.lower());
}

Eigen::VectorXd denormalize(const Domain& d, const Eigen::VectorXd& x) {
  if (x.size() != d.dims())
    throw std::invalid_argument("denormalize: dimension mismatch");
  return d.lower() + x.cwiseProduct(d.upper() - d.lower());
}

MatrixView as_matrix(const Dataset& ds) {
  if (ds.empty()) throw std::invalid_argument("as_matrix: empty dataset");
  const int n = ds.size();
  const int d = ds.dims();

  MatrixView v;
  v.m.values = Eigen::MatrixXd::Zero(n, d + 1);
  v.m.observed.setConstant(n, d + 1, true);

  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += ds.row(i).y;
  mean /= n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    double c = ds.row(i).y - mean;
    var += c * c;
  }
  var /= n;
  v.y_mean = mean;
  v.y_scale = var < 1e-24 ? 1.0 : std::sqrt(var);

  for (int i = 0; i < n; ++i) {
    const Row& r = ds.row(i);
    for (int j = 0; j < d; ++j) {
      if (r.x.observed(j)) {
        v.m.values(i, j) = normalize_coord(ds.domain(), j, r.x.value(j));
      } else {
        v.m.observed(i, j) = false;
      }
    }
    v.m.values(i, d) = (r.y - v.y_mean) / v.y_scale;
  }
  return v;
}

}  // namespace bomi
