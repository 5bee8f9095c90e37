#pragma once

// Independent reference implementations used only by the test suites. Each
// one takes the slow, obviously-correct route so it shares no code path with
// the library implementation it checks.

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "binfar/glm.hpp"

namespace oracles {

// Cyclic Jacobi eigendecomposition of a dense symmetric matrix; eigenvalues
// descending, eigenvectors in matching columns.
struct JacobiEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
JacobiEig jacobi_symmetric_eig(Eigen::MatrixXd a);

// Iteratively reweighted least squares (Fisher scoring) for the binary model
// with the given link; independent of the Newton path in the library.
Eigen::VectorXd irls_fit(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                         const binfar::LinkFunction& link, int max_iter = 200,
                         double tol = 1e-12);

// Central finite differences.
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, double step = 1e-6);
Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& g,
                            const Eigen::VectorXd& x, double step = 1e-5);

// Tie-adjusted concordant-pair fraction (Mann-Whitney), counted directly over
// all positive/negative pairs.
double pair_count_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

// Standard normal quantile found by bisecting erfc-based CDF evaluations.
double normal_quantile_bisect(double p);

// Direct naive re-summation of the binary log-likelihood.
double naive_log_likelihood(const Eigen::VectorXd& beta, const binfar::Design& design,
                            const binfar::LinkFunction& link);

// Ordinary R^2 of y on [1, X] computed from scratch with a QR solve.
double plain_r_squared(const Eigen::VectorXd& y, const Eigen::MatrixXd& x);

}  // namespace oracles
