#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "binfar/factors.hpp"
#include "binfar/glm.hpp"
#include "binfar/metrics.hpp"

namespace binfar {

enum class ErrorLink {
  Normal,                // Example 1
  LogisticUnitVariance,  // Example 2
};

struct DgpConfig {
  int n = 100;
  int t = 100;
  ErrorLink error_link = ErrorLink::Normal;
  double rho_eps = 0.0;  // 0 (DGP1), 0.3 (DGP2), 0.7 (DGP3)
  std::uint64_t seed = 0;
  int h = 1;
};

// One simulated dataset: two observed regressors, two AR(1) latent factors
// with unit stationary variance, an N-column predictor panel, and the binary
// outcome from the threshold rule with beta = (-2, 1, 1, 1, 1).
struct SimDraw {
  PanelMatrix panel;            // T x N, x_it = lambda_i' f_t + noise
  Eigen::MatrixXd w;            // T x 2 observed regressors
  Eigen::MatrixXd f_true;       // T x 2 latent factors
  Eigen::MatrixXd loadings_true;  // N x 2
  Eigen::VectorXd y;            // length T-h, y(t) = y_{t+h}
  Eigen::VectorXd beta_true;    // (b0, b_w1, b_w2, b_f1, b_f2)
};

SimDraw generate(const DgpConfig& config);

LinkFunction fitting_link(ErrorLink link);

// One Monte Carlo cell: replication-level estimates plus summary statistics.
struct StudyCell {
  DgpConfig config;
  int replications = 0;
  int failures = 0;
  RmseReport rmse;
  double auc_mean = 0.0;
  double auc_median = 0.0;
  double auc_std = 0.0;
  std::vector<int> d_selected;        // per replication, only when use_ic
  Eigen::MatrixXd estimates;          // converged replications x k
  Eigen::MatrixXd rotated_truth;      // matching rows of beta at that draw's rotation
  std::vector<double> aucs;
};

struct StudyTables {
  std::vector<StudyCell> cells;
};

// Runs the full two-step pipeline per replication: generate, estimate factors
// (d = 2, or IC-selected when use_ic), rotate the true coefficients by that
// draw's H, fit by maximum likelihood with the matching link, record the
// coefficient estimate and the in-sample AUC. Replications use independent
// RNG streams, so results are identical for any thread count.
StudyTables run_study(const std::vector<DgpConfig>& grid, int replications, bool use_ic);

// Per-replication seed: stream kStudyStreamBase + r of the cell seed.
inline constexpr std::uint64_t kStudyStreamBase = 100;

}  // namespace binfar
