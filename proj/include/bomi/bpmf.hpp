#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bomi/core.hpp"
#include "bomi/rng.hpp"

namespace bomi::bpmf {

struct Config {
  int latent_dim = 15;
  double xi = 0.01;   // per-cell observation variance, normalized scale
  int burn_in = 40;   // Gibbs steps discarded before retaining states
  int completions = 5;
  int thinning = 1;   // Gibbs steps between retained states
  bool independent_chains = false;  // one forked chain per completion
  bool mean_fill = false;           // fill with the cell mean instead of sampling

  void validate() const;
};

// One Gibbs state: row factors U (N x K), column factors V (K x M), and the
// Gaussian hyperparameters of each factor family.
struct FactorState {
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
  Eigen::VectorXd mu_u;
  Eigen::MatrixXd lambda_u;
  Eigen::VectorXd mu_v;
  Eigen::MatrixXd lambda_v;
};

// Bartlett draw; scale must be symmetric positive definite, dof >= dim.
Eigen::MatrixXd wishart(const Eigen::MatrixXd& scale, double dof, RngStream& rng);

// Posterior (mean, precision) of one row factor given V, the hyperparameters
// and the row's observed cells; col/row sums accumulate in the given order
// (natural when empty).
std::pair<Eigen::VectorXd, Eigen::MatrixXd> row_conditional(
    const MaskedMatrix& R, const FactorState& s, int row, double xi,
    std::span<const int> col_order = {});
std::pair<Eigen::VectorXd, Eigen::MatrixXd> col_conditional(
    const MaskedMatrix& R, const FactorState& s, int col, double xi,
    std::span<const int> row_order = {});

FactorState init_state(const MaskedMatrix& R, const Config& cfg, RngStream& rng,
                       std::span<const int> row_order = {},
                       std::span<const int> col_order = {});

// One full sweep: hyperparameters of U, hyperparameters of V, all U rows,
// all V columns. Orders control both the update sequence and the order of
// every sum over rows/columns, so permuting R and permuting the orders give
// bitwise-identical results.
void gibbs_step(FactorState& s, const MaskedMatrix& R, const Config& cfg,
                RngStream& rng, std::span<const int> row_order = {},
                std::span<const int> col_order = {});

// burn_in sweeps, then cfg.completions states each separated by cfg.thinning
// sweeps. With independent_chains, each retained state comes from its own
// forked chain instead.
std::vector<FactorState> run_chain(const MaskedMatrix& R, const Config& cfg,
                                   RngStream& rng,
                                   std::span<const int> row_order = {},
                                   std::span<const int> col_order = {});

// cfg.completions copies of R with every unobserved cell filled from
// N(U_i . V_j, xi) under the corresponding retained state, clamped to [0,1]
// so imputed inputs stay inside the domain box.
// Observed cells are copied through bit-identically.
std::vector<Eigen::MatrixXd> complete_masked(const MaskedMatrix& R, const Config& cfg,
                                             RngStream& rng,
                                             std::span<const int> row_order = {},
                                             std::span<const int> col_order = {});

// Mean of U V over the retained states, at every cell (no clamping).
Eigen::MatrixXd completion_mean(const MaskedMatrix& R, const Config& cfg,
                                RngStream& rng);

// Predictive distribution of one missing input cell, normalized scale.
struct CellDistribution {
  int row;
  int dim;
  double mean;  // unclamped
  double var;   // = cfg.xi
};

// cfg.completions plausible completed datasets; observed coordinates and all
// targets are preserved exactly, fills are denormalized back to the domain.
// A dataset with no missing cells short-circuits to completions identical
// copies without consuming randomness.
std::vector<Dataset> sample_completions(const Dataset& ds, const Config& cfg,
                                        RngStream& rng);

// Final retained state of the same chain sample_completions would run from an
// equal rng state, summarized per missing cell.
std::vector<CellDistribution> missing_distributions(const Dataset& ds,
                                                    const Config& cfg,
                                                    RngStream& rng);

}  // namespace bomi::bpmf
