#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bomi/gp.hpp"
#include "bomi/rng.hpp"

using namespace bomi;

namespace {

Eigen::MatrixXd random_inputs(RngStream& g, int n, int d) {
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) X(i, j) = g.uniform01();
  return X;
}

Eigen::VectorXd random_targets(RngStream& g, int n) {
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = g.normal();
  return y;
}

Eigen::MatrixXd dense_kernel(const Eigen::MatrixXd& X, double signal2,
                             double length) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      K(i, j) = gp::kernel(signal2, length, X.row(i), X.row(j));
  return K;
}

}  // namespace

TEST_CASE("kernel: fixed values and shape") {
  Eigen::VectorXd a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 1.0;  // squared distance 2
  CHECK(gp::kernel(1.0, 1.0, a, a) == 1.0);
  CHECK(gp::kernel(1.0, 1.0, a, b) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gp::kernel(3.0, 1.0, a, a) == 3.0);
  // Symmetric, positive, monotone decreasing in distance.
  CHECK(gp::kernel(1.0, 0.7, a, b) == gp::kernel(1.0, 0.7, b, a));
  double prev = 1.0;
  for (double dist = 0.5; dist < 20.0; dist *= 2.0) {
    Eigen::VectorXd c(2);
    c << dist, 0.0;
    double k = gp::kernel(1.0, 1.0, a, c);
    CHECK(k > 0.0);
    CHECK(k < prev);
    prev = k;
  }
  CHECK_THROWS_AS(gp::kernel(0.0, 1.0, a, b), std::invalid_argument);
  CHECK_THROWS_AS(gp::kernel(1.0, 0.0, a, b), std::invalid_argument);
}

TEST_CASE("log marginal likelihood: unit-evidence closed form") {
  Eigen::MatrixXd X(1, 1);
  X << 0.0;
  Eigen::VectorXd y(1);
  y << 0.0;
  // signal2 + noise2 = 1, so the evidence matrix is [1]: the value is the
  // height of a standard normal at zero.
  double got = gp::log_marginal_likelihood(X, y, 1.0, 0.5, 0.5);
  CHECK(got == doctest::Approx(-0.918938533204672).epsilon(1e-12));
  CHECK(got == doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi)));
}

TEST_CASE("log marginal likelihood: matches explicit-determinant oracle") {
  RngStream g(51);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 5;
    Eigen::MatrixXd X = random_inputs(g, n, 2);
    Eigen::VectorXd y = random_targets(g, n);
    double length = 0.4, signal2 = 1.3, noise2 = 1e-2;

    Eigen::MatrixXd K = dense_kernel(X, signal2, length);
    K.diagonal().array() += noise2;
    double direct = -0.5 * y.dot(K.inverse() * y) - 0.5 * std::log(K.determinant()) -
                    0.5 * n * std::log(2.0 * std::numbers::pi);

    double got = gp::log_marginal_likelihood(X, y, length, signal2, noise2);
    CHECK(got == doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("log marginal likelihood: duplicating an observation cannot raise it") {
  // With observation variance 1 the conditional density of any extra point
  // is bounded by 1/sqrt(2*pi) < 1, so evidence cannot increase.
  RngStream g(52);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + g.uniform_int(5);
    Eigen::MatrixXd X = random_inputs(g, n, 2);
    Eigen::VectorXd y = random_targets(g, n);
    double base = gp::log_marginal_likelihood(X, y, 0.5, 1.0, 1.0);

    Eigen::MatrixXd X2(n + 1, 2);
    X2.topRows(n) = X;
    X2.row(n) = X.row(0);
    Eigen::VectorXd y2(n + 1);
    y2.head(n) = y;
    y2[n] = y[0];
    double dup = gp::log_marginal_likelihood(X2, y2, 0.5, 1.0, 1.0);
    CHECK(dup <= base + 1e-10);
  }
}

TEST_CASE("posterior: matches a dense-inverse oracle on small datasets") {
  RngStream g(53);
  for (int n = 1; n <= 10; ++n) {
    Eigen::MatrixXd X = random_inputs(g, n, 2);
    Eigen::VectorXd y = random_targets(g, n);
    double length = 0.5, signal2 = 2.0, noise2 = 1e-4;
    gp::Model m(X, y, length, signal2, noise2);

    Eigen::MatrixXd K = dense_kernel(X, signal2, length);
    K.diagonal().array() += noise2;
    Eigen::MatrixXd Kinv = K.inverse();

    for (int q = 0; q < 5; ++q) {
      Eigen::VectorXd x(2);
      x << g.uniform01(), g.uniform01();
      Eigen::VectorXd k(n);
      for (int i = 0; i < n; ++i) k[i] = gp::kernel(signal2, length, X.row(i), x);
      double mu = k.dot(Kinv * y);
      double var = signal2 - k.dot(Kinv * k);

      gp::Prediction p = m.predict(x);
      CHECK(std::abs(p.mean - mu) < 1e-8);
      CHECK(std::abs(p.var - std::max(0.0, var)) < 1e-8);
    }
  }
}

TEST_CASE("posterior: empty model returns the prior") {
  gp::Model m(Eigen::MatrixXd(0, 3), Eigen::VectorXd(0), 1.0, 2.5, 1e-6);
  Eigen::VectorXd x(3);
  x << 0.1, 0.9, 0.4;
  gp::Prediction p = m.predict(x);
  CHECK(p.mean == 0.0);
  CHECK(p.var == 2.5);
  CHECK(m.log_marginal() == 0.0);
  CHECK(m.size() == 0);
}

TEST_CASE("posterior: near-interpolation at training points with tiny noise") {
  RngStream g(54);
  Eigen::MatrixXd X(6, 1);
  X << 0.05, 0.2, 0.4, 0.6, 0.8, 0.95;  // separated, so K is well conditioned
  Eigen::VectorXd y = random_targets(g, 6);
  gp::Model m(X, y, 0.15, 1.0, 1e-8);
  for (int i = 0; i < 6; ++i) {
    gp::Prediction p = m.predict(X.row(i));
    CHECK(std::abs(p.mean - y[i]) < 1e-3);
    CHECK(p.var < 1e-4);
  }
}

TEST_CASE("posterior: variance bounded by the prior and shrinks with data") {
  RngStream g(55);
  Eigen::MatrixXd X = random_inputs(g, 9, 2);
  Eigen::VectorXd y = random_targets(g, 9);
  double signal2 = 1.7;
  gp::Model big(X, y, 0.4, signal2, 1e-6);
  gp::Model small(X.topRows(5), y.head(5), 0.4, signal2, 1e-6);

  for (int q = 0; q < 50; ++q) {
    Eigen::VectorXd x(2);
    x << g.uniform(-0.5, 1.5), g.uniform(-0.5, 1.5);
    double v_small = small.predict(x).var;
    double v_big = big.predict(x).var;
    CHECK(v_big >= 0.0);
    CHECK(v_big <= signal2 + 1e-8);
    // More evidence never widens the posterior (same hyperparameters).
    CHECK(v_big <= v_small + 1e-8);
  }

  // Far from all data the posterior reverts to the prior.
  Eigen::VectorXd far(2);
  far << 50.0, -50.0;
  CHECK(big.predict(far).var == doctest::Approx(signal2).epsilon(1e-8));
  CHECK(big.predict(far).mean == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("fit: single point predicts zero at itself") {
  Eigen::MatrixXd X(1, 1);
  X << 0.5;
  Eigen::VectorXd y(1);
  y << 0.0;
  gp::Model m = gp::fit(X, y);
  CHECK(m.predict(X.row(0)).mean == 0.0);
}

TEST_CASE("fit: recovers a known length scale within a factor of two") {
  RngStream g(56);
  const int n = 50;
  Eigen::MatrixXd X = random_inputs(g, n, 1);
  const double true_l = 0.3;
  Eigen::MatrixXd K = dense_kernel(X, 1.0, true_l);
  K.diagonal().array() += 1e-8;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  REQUIRE(llt.info() == Eigen::Success);
  Eigen::VectorXd z = random_targets(g, n);
  Eigen::VectorXd y = llt.matrixL() * z;

  gp::Model m = gp::fit(X, y);
  CHECK(m.length() >= true_l / 2.0);
  CHECK(m.length() <= true_l * 2.0);
}

TEST_CASE("fit: deterministic, stays in the search box, floors the noise") {
  RngStream g(57);
  Eigen::MatrixXd X = random_inputs(g, 12, 2);
  Eigen::VectorXd y = random_targets(g, 12);

  gp::Model a = gp::fit(X, y);
  gp::Model b = gp::fit(X, y);
  CHECK(a.length() == b.length());
  CHECK(a.signal2() == b.signal2());
  CHECK(a.log_marginal() == b.log_marginal());

  CHECK(a.length() >= 0.01);
  CHECK(a.length() <= 2.0);
  CHECK(a.signal2() >= 0.1);
  CHECK(a.signal2() <= 10.0);

  gp::FitOptions zero_noise;
  zero_noise.noise2 = 0.0;
  gp::Model c = gp::fit(X, y, zero_noise);
  CHECK(c.noise2() >= 1e-8);

  // The chosen point beats every cell of the coarse grid it started from.
  for (double length : {0.01, 0.1, 0.5, 2.0})
    for (double signal2 : {0.1, 1.0, 10.0})
      CHECK(a.log_marginal() >=
            gp::log_marginal_likelihood(X, y, length, signal2, a.noise2()) - 1e-9);
}

TEST_CASE("fit: duplicated inputs with conflicting targets still fit") {
  Eigen::MatrixXd X(4, 1);
  X << 0.2, 0.2, 0.8, 0.9;
  Eigen::VectorXd y(4);
  y << -1.0, 1.0, 0.5, 0.4;
  gp::Model m = gp::fit(X, y);
  // The conflicting pair pulls the posterior toward its average.
  Eigen::VectorXd q(1);
  q << 0.2;
  CHECK(std::abs(m.predict(q).mean) < 0.5);
}

TEST_CASE("cholesky ladder: escalates on a singular matrix, reports exhaustion") {
  // Duplicate-row kernel: exactly singular, so the first rung (no jitter)
  // must fail and a later rung succeed.
  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  auto [llt, jitter] = gp::detail::chol_with_jitter(singular, 0.0, 1e-2);
  CHECK(jitter > 0.0);
  CHECK(llt.info() == Eigen::Success);
  Eigen::MatrixXd back = llt.matrixL() * Eigen::MatrixXd(llt.matrixL()).transpose();
  Eigen::MatrixXd expect = singular;
  expect.diagonal().array() += jitter;
  CHECK((back - expect).norm() < 1e-8 * expect.norm());

  // A negative-definite matrix exhausts the whole ladder.
  Eigen::MatrixXd nd = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(gp::detail::chol_with_jitter(nd, 0.0, 1e-2), std::runtime_error);

  auto dups = gp::detail::duplicate_rows(singular);
  REQUIRE(dups.size() == 1);
  CHECK(dups[0] == std::pair<int, int>(0, 1));
}

TEST_CASE("model construction guards") {
  Eigen::MatrixXd X(2, 1);
  X << 0.1, 0.9;
  Eigen::VectorXd y(2);
  y << 1.0, -1.0;
  CHECK_THROWS_AS(gp::Model(X, Eigen::VectorXd(3), 1.0, 1.0, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(gp::Model(X, y, 0.0, 1.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(gp::Model(X, y, 1.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(gp::fit(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0)),
                  std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(gp::fit(X, bad), std::invalid_argument);

  gp::Model floored(X, y, 1.0, 1.0, 0.0);
  CHECK(floored.noise2() >= 1e-8);
}
