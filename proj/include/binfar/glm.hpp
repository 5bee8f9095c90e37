#pragma once

#include <Eigen/Dense>
#include <vector>

#include "binfar/link.hpp"

namespace binfar {

// Regression data for the binary forecasting equation. Row t pairs the
// regressors dated t with the outcome y_{t+h}; the regressor vector is
// z_t = (1, w_t', f_t')'. Either block may have zero columns.
struct Design {
  Eigen::MatrixXd w;  // (T-h) x p observed regressors
  Eigen::MatrixXd f;  // (T-h) x d factor regressors (estimated or true)
  Eigen::VectorXd y;  // binary outcomes y_{t+h}, values in {0,1}
  int horizon = 1;

  Eigen::Index rows() const { return y.size(); }
  Eigen::Index p() const { return w.cols(); }
  Eigen::Index d() const { return f.cols(); }
  Eigen::Index k() const { return 1 + p() + d(); }

  // Full regressor matrix [1 | w | f].
  Eigen::MatrixXd z() const;
};

struct FitOptions {
  double tol = 1e-8;      // max-norm gradient tolerance
  int max_iter = 100;     // Newton iterations
  double beta_cap = 50.0; // infinity-norm bound before separation is declared
};

struct BinaryFarFit {
  Eigen::VectorXd beta;  // (b0, b_w', b_f')'
  double loglik = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  LinkFunction link = LinkFunction::probit();
  bool converged = false;
  std::vector<double> loglik_trace;  // objective after each accepted step
};

double log_likelihood(const Eigen::VectorXd& beta, const Design& design,
                      const LinkFunction& link);

struct ScoreHessian {
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

ScoreHessian score_and_hessian(const Eigen::VectorXd& beta, const Design& design,
                               const LinkFunction& link);

// Newton maximization with step halving from beta = 0. Returns
// converged=false (no throw) when max_iter is hit with the gradient still
// above tolerance.
BinaryFarFit fit(const Design& design, const LinkFunction& link, const FitOptions& opts = {});

// Predicted probability Phi(beta' * (1, w_new', f_new')'), clamped to (0,1).
double predict_proba(const BinaryFarFit& fit, const Eigen::VectorXd& w_new,
                     const Eigen::VectorXd& f_new);

// Fitted probabilities for every design row.
Eigen::VectorXd fitted_probabilities(const BinaryFarFit& fit, const Design& design);

// Exact maximized log-likelihood of the intercept-only model:
// m*log(m/n) + (n-m)*log(1-m/n) with m ones of n.
double intercept_only_loglik(const Eigen::VectorXd& y);

}  // namespace binfar
