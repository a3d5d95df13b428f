#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bomi {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Axis-aligned box of valid inputs.
class Domain {
public:
  Domain(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static Domain unit(int dims);

  int dims() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  double range(int i) const { return upper_[i] - lower_[i]; }
  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;

private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// Point with a per-coordinate observed mask. Unobserved slots hold NaN so
// any read that bypasses value() surfaces immediately.
class PartialPoint {
public:
  PartialPoint() = default;
  explicit PartialPoint(const Eigen::VectorXd& values);
  PartialPoint(const Eigen::VectorXd& values, const BoolArray& observed);

  int dims() const { return static_cast<int>(values_.size()); }
  bool complete() const;
  int observed_count() const;
  bool observed(int i) const;
  double value(int i) const;  // throws on an unobserved coordinate
  Eigen::VectorXd full() const;  // throws unless complete
  const BoolArray& mask() const { return observed_; }
  const Eigen::VectorXd& raw() const { return values_; }

private:
  Eigen::VectorXd values_;
  BoolArray observed_;
};

// One evaluated design point. origin = -1 for initial data, otherwise the
// 1-based optimization iteration whose suggestion produced the row.
struct Row {
  PartialPoint x;
  double y = 0.0;
  int origin = -1;
};

class Dataset {
public:
  explicit Dataset(Domain domain);

  const Domain& domain() const { return domain_; }
  int dims() const { return domain_.dims(); }
  int size() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  void add(PartialPoint x, double y, int origin = -1);
  const Row& row(int i) const { return rows_.at(i); }
  const std::vector<Row>& rows() const { return rows_; }
  bool complete() const;
  long missing_cells() const;
  Dataset complete_rows() const;  // keeps row order

private:
  Domain domain_;
  std::vector<Row> rows_;
};

// Values with a per-cell observed indicator; unobserved cells hold 0 so the
// matrix stays safe in products.
struct MaskedMatrix {
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> observed;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  long missing_count() const {
    return static_cast<long>(observed.size()) - observed.count();
  }
};

// Dataset rewritten for factorization / regression: inputs scaled to [0,1],
// targets standardized, targets in the last column (always observed).
struct MatrixView {
  MaskedMatrix m;
  double y_mean = 0.0;
  double y_scale = 1.0;

  Eigen::Index input_cols() const { return m.cols() - 1; }
  double to_raw_y(double standardized) const { return standardized * y_scale + y_mean; }
  double to_std_y(double raw) const { return (raw - y_mean) / y_scale; }
};

double normalize_coord(const Domain& d, int i, double v);
double denormalize_coord(const Domain& d, int i, double v);
Eigen::VectorXd normalize(const Domain& d, const Eigen::VectorXd& x);
Eigen::VectorXd denormalize(const Domain& d, const Eigen::VectorXd& x);

MatrixView as_matrix(const Dataset& ds);

}  // namespace bomi
