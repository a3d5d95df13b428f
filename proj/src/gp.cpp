#include "bomi/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace bomi::gp {

namespace detail {

Eigen::MatrixXd pairwise_sqdist(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  Eigen::VectorXd sq = X.rowwise().squaredNorm();
  Eigen::MatrixXd D = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
                      2.0 * (X * X.transpose());
  return D.cwiseMax(0.0);
}

std::pair<Eigen::LLT<Eigen::MatrixXd>, double> chol_with_jitter(
    const Eigen::MatrixXd& A, double base, double max_jitter) {
  double j = 0.0;
  for (;;) {
    Eigen::MatrixXd B = A;
    B.diagonal().array() += base + j;
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() == Eigen::Success) return {llt, j};
    double next = j == 0.0 ? 1e-8 : j * 10.0;
    if (next > max_jitter * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "cholesky failed with jitter up to " << max_jitter;
      throw std::runtime_error(msg.str());
    }
    j = next;
  }
}

std::vector<std::pair<int, int>> duplicate_rows(const Eigen::MatrixXd& X) {
  std::vector<std::pair<int, int>> out;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = i + 1; j < X.rows(); ++j)
      if (X.row(i) == X.row(j)) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

}  // namespace detail

namespace {

Eigen::MatrixXd kernel_from_sqdist(const Eigen::MatrixXd& S, double signal2,
                                   double length) {
  return signal2 * (-S / (2.0 * length * length)).array().exp().matrix();
}

std::string describe_duplicates(const Eigen::MatrixXd& X) {
  auto dups = detail::duplicate_rows(X);
  if (dups.empty()) return "no duplicate rows";
  std::ostringstream s;
  s << "duplicate rows";
  int shown = 0;
  for (auto [i, j] : dups) {
    s << (shown ? "," : "") << " (" << i << "," << j << ")";
    if (++shown == 8) break;
  }
  if (static_cast<int>(dups.size()) > shown) s << " and " << dups.size() - shown << " more";
  return s.str();
}

double lml_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXd& y) {
  Eigen::VectorXd alpha = llt.solve(y);
  double logdet_half = llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * y.dot(alpha) - logdet_half -
         0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double kernel(double signal2, double length, const Eigen::VectorXd& a,
              const Eigen::VectorXd& b) {
  if (!(signal2 > 0.0) || !(length > 0.0))
    throw std::invalid_argument("kernel: signal2 and length must be positive");
  return signal2 * std::exp(-(a - b).squaredNorm() / (2.0 * length * length));
}

Model::Model(Eigen::MatrixXd X, Eigen::VectorXd y, double length, double signal2,
             double noise2)
    : X_(std::move(X)), y_(std::move(y)), length_(length), signal2_(signal2) {
  if (X_.rows() != y_.size())
    throw std::invalid_argument("gp::Model: inputs and targets disagree");
  if (!(length_ > 0.0) || !(signal2_ > 0.0) || !(noise2 >= 0.0))
    throw std::invalid_argument("gp::Model: bad hyperparameters");

  double base = std::max(noise2, 1e-8);
  if (y_.size() == 0) {  // prior-only model: predicts (0, signal2) everywhere
    noise2_ = base;
    log_marginal_ = 0.0;
    return;
  }
  Eigen::MatrixXd K =
      kernel_from_sqdist(detail::pairwise_sqdist(X_), signal2_, length_);
  double jitter = 0.0;
  try {
    std::tie(llt_, jitter) = detail::chol_with_jitter(K, base, 1e-2);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()) + "; " + describe_duplicates(X_));
  }
  noise2_ = base + jitter;
  alpha_ = llt_.solve(y_);
  log_marginal_ = lml_from_llt(llt_, y_);
}

Prediction Model::predict(const Eigen::VectorXd& x) const {
  if (x.size() != X_.cols())
    throw std::invalid_argument("gp::Model::predict: dimension mismatch");
  const Eigen::Index n = X_.rows();
  if (n == 0) return {0.0, signal2_};
  Eigen::VectorXd k(n);
  double inv2l2 = 1.0 / (2.0 * length_ * length_);
  for (Eigen::Index i = 0; i < n; ++i)
    k[i] = signal2_ * std::exp(-(X_.row(i).transpose() - x).squaredNorm() * inv2l2);
  Eigen::VectorXd v = llt_.matrixL().solve(k);
  Prediction p;
  p.mean = k.dot(alpha_);
  p.var = std::max(0.0, signal2_ - v.squaredNorm());
  return p;
}

double log_marginal_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                               double length, double signal2, double noise2) {
  if (X.rows() != y.size() || y.size() == 0)
    throw std::invalid_argument("log_marginal_likelihood: inputs and targets disagree");
  if (!(length > 0.0) || !(signal2 > 0.0) || !(noise2 > 0.0))
    throw std::invalid_argument("log_marginal_likelihood: bad hyperparameters");
  Eigen::MatrixXd K = kernel_from_sqdist(detail::pairwise_sqdist(X), signal2, length);
  K.diagonal().array() += noise2;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("log_marginal_likelihood: cholesky failed");
  return lml_from_llt(llt, y);
}

Model fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const FitOptions& opts) {
  if (X.rows() != y.size() || y.size() == 0)
    throw std::invalid_argument("gp::fit: inputs and targets disagree");
  if (!X.allFinite() || !y.allFinite())
    throw std::invalid_argument("gp::fit: non-finite data");
  if (!(opts.noise2 >= 0.0)) throw std::invalid_argument("gp::fit: negative noise2");

  const double base = std::max(opts.noise2, 1e-8);
  const Eigen::MatrixXd S = detail::pairwise_sqdist(X);

  auto lml_at = [&](double length, double signal2) -> std::optional<double> {
    Eigen::MatrixXd K = kernel_from_sqdist(S, signal2, length);
    try {
      auto [llt, jitter] = detail::chol_with_jitter(K, base, opts.max_jitter);
      (void)jitter;
      return lml_from_llt(llt, y);
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
  };

  constexpr int grid = 8;
  constexpr double l_lo = 0.01, l_hi = 2.0;
  constexpr double s_lo = 0.1, s_hi = 10.0;
  const double l_step = std::pow(l_hi / l_lo, 1.0 / (grid - 1));
  const double s_step = std::pow(s_hi / s_lo, 1.0 / (grid - 1));

  double best_l = 0.0, best_s = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (int a = 0; a < grid; ++a) {
    double length = l_lo * std::pow(l_step, a);
    for (int b = 0; b < grid; ++b) {
      double signal2 = s_lo * std::pow(s_step, b);
      auto v = lml_at(length, signal2);
      if (v && *v > best) {
        best = *v;
        best_l = length;
        best_s = signal2;
        found = true;
      }
    }
  }
  if (!found)
    throw std::runtime_error("gp::fit: no factorizable hyperparameter cell; " +
                             describe_duplicates(X));

  // Golden-section polish of each hyperparameter in log space, two passes,
  // bracketing one grid step either side of the incumbent.
  constexpr double invphi = 0.6180339887498949;
  auto refine = [&](bool refine_length, double lo_bound, double hi_bound,
                    double step) {
    double center = refine_length ? best_l : best_s;
    double a = std::max(lo_bound, center / step);
    double b = std::min(hi_bound, center * step);
    double la = std::log(a), lb = std::log(b);
    auto eval = [&](double lx) {
      double v = std::exp(lx);
      auto r = refine_length ? lml_at(v, best_s) : lml_at(best_l, v);
      return r ? *r : -std::numeric_limits<double>::infinity();
    };
    double x1 = lb - invphi * (lb - la), x2 = la + invphi * (lb - la);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 5; ++it) {
      if (f1 >= f2) {
        lb = x2;
        x2 = x1;
        f2 = f1;
        x1 = lb - invphi * (lb - la);
        f1 = eval(x1);
      } else {
        la = x1;
        x1 = x2;
        f1 = f2;
        x2 = la + invphi * (lb - la);
        f2 = eval(x2);
      }
    }
    double lx = f1 >= f2 ? x1 : x2;
    double fv = std::max(f1, f2);
    if (fv > best) {
      best = fv;
      (refine_length ? best_l : best_s) = std::exp(lx);
    }
  };
  for (int pass = 0; pass < 2; ++pass) {
    refine(true, l_lo, l_hi, l_step);
    refine(false, s_lo, s_hi, s_step);
  }

  return Model(X, y, best_l, best_s, opts.noise2);
}

}  // namespace bomi::gp
