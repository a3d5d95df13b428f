#include "bomi/bpmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bomi::bpmf {

namespace {

// Normal-Wishart hyperprior shared by both factor families.
constexpr double kBeta0 = 2.0;

struct NaturalOrder {
  std::vector<int> storage;
  std::span<const int> resolve(std::span<const int> given, int n) {
    if (!given.empty()) {
      if (static_cast<int>(given.size()) != n)
        throw std::invalid_argument("bpmf: order length mismatch");
      return given;
    }
    storage.resize(n);
    for (int i = 0; i < n; ++i) storage[i] = i;
    return storage;
  }
};

Eigen::VectorXd mvn_from_precision(const Eigen::VectorXd& mean,
                                   const Eigen::MatrixXd& precision,
                                   RngStream& rng) {
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    Eigen::MatrixXd p = precision;
    p.diagonal().array() += 1e-10;
    llt.compute(p);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("bpmf: conditional precision not positive definite");
  }
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return mean + llt.matrixU().solve(z);
}

// Posterior Normal-Wishart draw given factor samples listed by `order`;
// samples(i) must return the i-th factor vector.
template <typename SampleAt>
void sample_hyper(int count, int k, SampleAt samples, RngStream& rng,
                  Eigen::VectorXd& mu, Eigen::MatrixXd& lambda) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(k);
  for (int t = 0; t < count; ++t) mean += samples(t);
  mean /= count;

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(k, k);
  for (int t = 0; t < count; ++t) {
    Eigen::VectorXd c = samples(t) - mean;
    scatter += c * c.transpose();
  }

  double beta_n = kBeta0 + count;
  double dof_n = k + count;
  Eigen::VectorXd mu_n = (count * mean) / beta_n;  // prior mean is zero
  Eigen::MatrixXd w_inv = Eigen::MatrixXd::Identity(k, k) + scatter +
                          (kBeta0 * count / beta_n) * mean * mean.transpose();
  Eigen::MatrixXd w_n = w_inv.llt().solve(Eigen::MatrixXd::Identity(k, k));

  lambda = wishart(w_n, dof_n, rng);
  mu = mvn_from_precision(mu_n, beta_n * lambda, rng);
}

void validate_matrix(const MaskedMatrix& R) {
  if (R.rows() == 0 || R.cols() == 0)
    throw std::invalid_argument("bpmf: empty matrix");
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    if (!R.observed.row(i).any())
      throw std::invalid_argument("bpmf: row " + std::to_string(i) +
                                  " has no observed cell");
  }
  for (Eigen::Index j = 0; j < R.cols(); ++j) {
    if (!R.observed.col(j).any())
      throw std::invalid_argument("bpmf: column " + std::to_string(j) +
                                  " has no observed cell");
  }
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j)
      if (R.observed(i, j) && !std::isfinite(R.values(i, j)))
        throw std::invalid_argument("bpmf: non-finite observed cell");
}

}  // namespace

void Config::validate() const {
  if (latent_dim < 1) throw std::invalid_argument("bpmf: latent_dim must be >= 1");
  if (!(xi > 0.0)) throw std::invalid_argument("bpmf: xi must be positive");
  if (burn_in < 1) throw std::invalid_argument("bpmf: burn_in must be >= 1");
  if (completions < 1) throw std::invalid_argument("bpmf: completions must be >= 1");
  if (thinning < 1) throw std::invalid_argument("bpmf: thinning must be >= 1");
}

Eigen::MatrixXd wishart(const Eigen::MatrixXd& scale, double dof, RngStream& rng) {
  const Eigen::Index k = scale.rows();
  if (scale.cols() != k || k == 0) throw std::invalid_argument("wishart: bad scale");
  if (dof < static_cast<double>(k)) throw std::invalid_argument("wishart: dof < dim");
  Eigen::LLT<Eigen::MatrixXd> llt(scale);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("wishart: scale not positive definite");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    A(i, i) = std::sqrt(rng.chi_squared(dof - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) A(i, j) = rng.normal();
  }
  Eigen::MatrixXd LA = llt.matrixL() * A;
  return LA * LA.transpose();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> row_conditional(
    const MaskedMatrix& R, const FactorState& s, int row, double xi,
    std::span<const int> col_order) {
  NaturalOrder ord;
  auto cols = ord.resolve(col_order, static_cast<int>(R.cols()));
  Eigen::MatrixXd prec = s.lambda_u;
  Eigen::VectorXd b = s.lambda_u * s.mu_u;
  const double inv_xi = 1.0 / xi;
  for (int j : cols) {
    if (!R.observed(row, j)) continue;
    const auto vj = s.V.col(j);
    prec.noalias() += inv_xi * (vj * vj.transpose());
    b.noalias() += inv_xi * R.values(row, j) * vj;
  }
  Eigen::VectorXd mean = prec.llt().solve(b);
  return {std::move(mean), std::move(prec)};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> col_conditional(
    const MaskedMatrix& R, const FactorState& s, int col, double xi,
    std::span<const int> row_order) {
  NaturalOrder ord;
  auto rows = ord.resolve(row_order, static_cast<int>(R.rows()));
  Eigen::MatrixXd prec = s.lambda_v;
  Eigen::VectorXd b = s.lambda_v * s.mu_v;
  const double inv_xi = 1.0 / xi;
  for (int i : rows) {
    if (!R.observed(i, col)) continue;
    const auto ui = s.U.row(i).transpose();
    prec.noalias() += inv_xi * (ui * ui.transpose());
    b.noalias() += inv_xi * R.values(i, col) * ui;
  }
  Eigen::VectorXd mean = prec.llt().solve(b);
  return {std::move(mean), std::move(prec)};
}

FactorState init_state(const MaskedMatrix& R, const Config& cfg, RngStream& rng,
                       std::span<const int> row_order,
                       std::span<const int> col_order) {
  cfg.validate();
  validate_matrix(R);
  const int n = static_cast<int>(R.rows());
  const int m = static_cast<int>(R.cols());
  const int k = cfg.latent_dim;
  NaturalOrder row_ord, col_ord;
  auto rows = row_ord.resolve(row_order, n);
  auto cols = col_ord.resolve(col_order, m);

  FactorState s;
  s.U.resize(n, k);
  for (int i : rows)
    for (int a = 0; a < k; ++a) s.U(i, a) = 0.1 * rng.normal();
  s.V.resize(k, m);
  for (int a = 0; a < k; ++a)
    for (int j : cols) s.V(a, j) = 0.1 * rng.normal();
  s.mu_u = Eigen::VectorXd::Zero(k);
  s.lambda_u = Eigen::MatrixXd::Identity(k, k);
  s.mu_v = Eigen::VectorXd::Zero(k);
  s.lambda_v = Eigen::MatrixXd::Identity(k, k);
  return s;
}

void gibbs_step(FactorState& s, const MaskedMatrix& R, const Config& cfg,
                RngStream& rng, std::span<const int> row_order,
                std::span<const int> col_order) {
  const int n = static_cast<int>(R.rows());
  const int m = static_cast<int>(R.cols());
  const int k = cfg.latent_dim;
  NaturalOrder row_ord, col_ord;
  auto rows = row_ord.resolve(row_order, n);
  auto cols = col_ord.resolve(col_order, m);

  sample_hyper(n, k, [&](int t) { return s.U.row(rows[t]).transpose().eval(); },
               rng, s.mu_u, s.lambda_u);
  sample_hyper(m, k, [&](int t) { return s.V.col(cols[t]).eval(); },
               rng, s.mu_v, s.lambda_v);

  for (int i : rows) {
    auto [mean, prec] = row_conditional(R, s, i, cfg.xi, cols);
    s.U.row(i) = mvn_from_precision(mean, prec, rng).transpose();
  }
  for (int j : cols) {
    auto [mean, prec] = col_conditional(R, s, j, cfg.xi, rows);
    s.V.col(j) = mvn_from_precision(mean, prec, rng);
  }
}

std::vector<FactorState> run_chain(const MaskedMatrix& R, const Config& cfg,
                                   RngStream& rng, std::span<const int> row_order,
                                   std::span<const int> col_order) {
  cfg.validate();
  validate_matrix(R);
  std::vector<FactorState> retained;
  retained.reserve(cfg.completions);
  if (cfg.independent_chains) {
    for (int q = 0; q < cfg.completions; ++q) {
      RngStream chain = rng.fork();
      FactorState s = init_state(R, cfg, chain, row_order, col_order);
      for (int it = 0; it < cfg.burn_in + cfg.thinning; ++it)
        gibbs_step(s, R, cfg, chain, row_order, col_order);
      retained.push_back(std::move(s));
    }
    return retained;
  }
  FactorState s = init_state(R, cfg, rng, row_order, col_order);
  for (int it = 0; it < cfg.burn_in; ++it)
    gibbs_step(s, R, cfg, rng, row_order, col_order);
  for (int q = 0; q < cfg.completions; ++q) {
    for (int it = 0; it < cfg.thinning; ++it)
      gibbs_step(s, R, cfg, rng, row_order, col_order);
    retained.push_back(s);
  }
  return retained;
}

std::vector<Eigen::MatrixXd> complete_masked(const MaskedMatrix& R, const Config& cfg,
                                             RngStream& rng,
                                             std::span<const int> row_order,
                                             std::span<const int> col_order) {
  auto states = run_chain(R, cfg, rng, row_order, col_order);
  NaturalOrder row_ord, col_ord;
  auto rows = row_ord.resolve(row_order, static_cast<int>(R.rows()));
  auto cols = col_ord.resolve(col_order, static_cast<int>(R.cols()));

  std::vector<Eigen::MatrixXd> out;
  out.reserve(states.size());
  const double sigma = std::sqrt(cfg.xi);
  for (const FactorState& s : states) {
    Eigen::MatrixXd filled = R.values;
    for (int i : rows) {
      for (int j : cols) {
        if (R.observed(i, j)) continue;
        double v = s.U.row(i).dot(s.V.col(j));
        if (!cfg.mean_fill) v += sigma * rng.normal();
        filled(i, j) = std::clamp(v, 0.0, 1.0);
      }
    }
    out.push_back(std::move(filled));
  }
  return out;
}

Eigen::MatrixXd completion_mean(const MaskedMatrix& R, const Config& cfg,
                                RngStream& rng) {
  auto states = run_chain(R, cfg, rng);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(R.rows(), R.cols());
  for (const FactorState& s : states) mean += s.U * s.V;
  return mean / static_cast<double>(states.size());
}

std::vector<Dataset> sample_completions(const Dataset& ds, const Config& cfg,
                                        RngStream& rng) {
  cfg.validate();
  if (ds.empty()) throw std::invalid_argument("sample_completions: empty dataset");
  if (ds.complete())
    return std::vector<Dataset>(cfg.completions, ds);

  MatrixView mv = as_matrix(ds);
  auto mats = complete_masked(mv.m, cfg, rng);

  std::vector<Dataset> out;
  out.reserve(mats.size());
  const int d = ds.dims();
  for (const Eigen::MatrixXd& filled : mats) {
    Dataset comp(ds.domain());
    for (int i = 0; i < ds.size(); ++i) {
      const Row& r = ds.row(i);
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j)
        x[j] = r.x.observed(j) ? r.x.value(j)
                               : denormalize_coord(ds.domain(), j, filled(i, j));
      comp.add(PartialPoint(x), r.y, r.origin);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<CellDistribution> missing_distributions(const Dataset& ds,
                                                    const Config& cfg,
                                                    RngStream& rng) {
  cfg.validate();
  if (ds.empty()) throw std::invalid_argument("missing_distributions: empty dataset");
  if (ds.complete()) return {};

  MatrixView mv = as_matrix(ds);
  auto states = run_chain(mv.m, cfg, rng);
  const FactorState& s = states.back();

  std::vector<CellDistribution> out;
  for (int i = 0; i < ds.size(); ++i)
    for (int j = 0; j < ds.dims(); ++j)
      if (!mv.m.observed(i, j))
        out.push_back({i, j, s.U.row(i).dot(s.V.col(j)), cfg.xi});
  return out;
}

}  // namespace bomi::bpmf
