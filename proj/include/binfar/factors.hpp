#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "binfar/period.hpp"

namespace binfar {

// A T x N predictor panel: rows are time, columns are series. series_ids and
// time_index may be empty for synthetic panels.
struct PanelMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> series_ids;
  std::vector<Period> time_index;

  Eigen::Index t() const { return values.rows(); }
  Eigen::Index n() const { return values.cols(); }
};

// Output of principal-component factor extraction.
struct FactorEstimate {
  Eigen::MatrixXd factors;      // T x d, (1/T) * factors^T * factors = I_d
  Eigen::MatrixXd loadings;     // N x d
  Eigen::VectorXd eigenvalues;  // top d eigenvalues of the scaled Gram, descending
  int d = 0;
  // Rotation linking estimates to the true factors; filled in simulation mode.
  std::optional<Eigen::MatrixXd> rotation;
  // Set when eigenvalues d and d+1 are tied within 1e-10 relative: the
  // factor space is identified only up to rotation of the tied columns.
  bool degenerate_spectrum = false;
};

// PCA factor extraction: factors = sqrt(T) times the top-d eigenvectors of
// X*X^T/(N*T), loadings = X^T * factors / T. The eigendecomposition runs on
// the smaller Gram matrix (T x T or N x N); both routes agree to 1e-8. Sign
// convention: each loading column sums to a nonnegative value.
FactorEstimate estimate_factors(const Eigen::MatrixXd& x, int d);
FactorEstimate estimate_factors(const PanelMatrix& x, int d);

// H = (Lambda^T Lambda / N)(F^T F_hat / T) V^{-1}; defined when the true
// factors and loadings are known (simulation mode).
Eigen::MatrixXd rotation_matrix(const FactorEstimate& estimate,
                                const Eigen::MatrixXd& true_factors,
                                const Eigen::MatrixXd& true_loadings);

struct FactorSelection {
  int d_hat = 0;
  Eigen::VectorXd ic_values;  // IC(d) for d = 0..d_max
};

// Penalized log residual variance: IC(d) = log(SSR(d)/(N*T)) + d*log(C)/C with
// C = N*T/(N+T); d_hat minimizes over 0..d_max (ties go to the smallest d).
FactorSelection select_num_factors(const Eigen::MatrixXd& x, int d_max);
FactorSelection select_num_factors(const PanelMatrix& x, int d_max);

inline constexpr int kDefaultDMax = 15;

}  // namespace binfar
