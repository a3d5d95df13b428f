#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace bomi::gp {

// Squared-exponential kernel: signal2 * exp(-|a-b|^2 / (2 length^2)).
double kernel(double signal2, double length, const Eigen::VectorXd& a,
              const Eigen::VectorXd& b);

struct Prediction {
  double mean = 0.0;
  double var = 0.0;
};

// Regressor with hyperparameters chosen by marginal-likelihood maximization.
// noise2 is the effective observation variance actually factored in,
// including any stabilizing jitter; never below 1e-8.
class Model {
public:
  Model(Eigen::MatrixXd X, Eigen::VectorXd y, double length, double signal2,
        double noise2);

  Prediction predict(const Eigen::VectorXd& x) const;

  double length() const { return length_; }
  double signal2() const { return signal2_; }
  double noise2() const { return noise2_; }
  double log_marginal() const { return log_marginal_; }
  int size() const { return static_cast<int>(y_.size()); }
  const Eigen::MatrixXd& inputs() const { return X_; }

private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  double length_;
  double signal2_;
  double noise2_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double log_marginal_;
};

struct FitOptions {
  double noise2 = 1e-6;      // floored at 1e-8
  double max_jitter = 1e-2;  // top of the stabilizing ladder
};

Model fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
          const FitOptions& opts = {});

double log_marginal_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                               double length, double signal2, double noise2);

namespace detail {

Eigen::MatrixXd pairwise_sqdist(const Eigen::MatrixXd& X);

// Factors A + (base + j) I, escalating j through {0, 1e-8, 1e-7, ...,
// max_jitter} until the factorization succeeds. Returns the factor and the
// applied j. Throws when the ladder is exhausted.
std::pair<Eigen::LLT<Eigen::MatrixXd>, double> chol_with_jitter(
    const Eigen::MatrixXd& A, double base, double max_jitter);

std::vector<std::pair<int, int>> duplicate_rows(const Eigen::MatrixXd& X);

}  // namespace detail

}  // namespace bomi::gp
