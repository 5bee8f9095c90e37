#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "binfar/factors.hpp"

namespace binfar {

struct RocCurve {
  Eigen::VectorXd thresholds;  // descending; leading +inf anchors the (0,0) point
  Eigen::VectorXd tp_rate;
  Eigen::VectorXd fp_rate;
  double auc = 0.0;  // trapezoidal area; equals the tie-adjusted pair statistic
};

// ROC over all distinct score thresholds with the rule "positive when
// score > threshold"; ties between classes contribute half a concordant pair.
RocCurve roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

// Estrella goodness of fit: 1 - (logLu/logLc)^(-(2/n)*logLc). The constrained
// model must be the intercept-only fit on the same sample.
double pseudo_r2(double loglik_unconstrained, double loglik_constrained, int n);

// beta_rotated = diag(I_{p+1}, H^{-1}) * beta: the intercept and w-block pass
// through, the factor block maps by H^{-1}. p is inferred from the sizes.
Eigen::VectorXd rotate_coefficients(const Eigen::VectorXd& beta_true,
                                    const Eigen::MatrixXd& h_matrix);

struct RmseReport {
  double rmse_all = 0.0;
  std::vector<std::pair<std::string, double>> per_coefficient;
};

// rmse_all = sqrt(mean_i ||estimates_i - truth_i||^2) over replication rows;
// per-coefficient entries use the same averaging coordinate-wise. Names
// default to b0, b1, ...
RmseReport rmse(const Eigen::MatrixXd& estimates, const Eigen::MatrixXd& beta_rotated,
                const std::vector<std::string>& names = {});

struct MarginalR2 {
  Eigen::MatrixXd per_series;      // N x d incremental adjusted R^2
  Eigen::VectorXd factor_average;  // length d, mean over series
};

// Incremental explanatory power of factor r for each series: the change in
// adjusted R^2 when the regression grows from the first r-1 to the first r
// factors (with intercept).
MarginalR2 marginal_r2(const PanelMatrix& panel, const FactorEstimate& factors);

}  // namespace binfar
