#include "binfar/factors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/kernels.hpp"

namespace binfar {

namespace {

constexpr double kDegenerateRelTol = 1e-10;

void require_finite(const Eigen::MatrixXd& x) {
  if (!x.allFinite()) {
    throw std::invalid_argument("panel contains non-finite entries; clean the data first");
  }
}

// Flip column signs so each loading column sums to a nonnegative value; a
// zero-sum column gets its first nonzero loading entry made positive.
void apply_sign_convention(Eigen::MatrixXd& factors, Eigen::MatrixXd& loadings) {
  for (Eigen::Index j = 0; j < loadings.cols(); ++j) {
    double s = loadings.col(j).sum();
    if (s == 0.0) {
      for (Eigen::Index i = 0; i < loadings.rows(); ++i) {
        if (loadings(i, j) != 0.0) {
          s = loadings(i, j);
          break;
        }
      }
    }
    if (s < 0.0) {
      loadings.col(j) = -loadings.col(j);
      factors.col(j) = -factors.col(j);
    }
  }
}

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending, full spectrum of the small Gram
  Eigen::MatrixXd eigenvectors; // columns aligned with eigenvalues
};

Spectrum small_gram_spectrum(const Eigen::MatrixXd& x, kernels::GramSide side) {
  const Eigen::MatrixXd gram = kernels::scaled_gram(x, side);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigensolver failed to converge on the Gram matrix");
  }
  // Eigen returns ascending order; reverse to descending.
  const Eigen::Index m = gram.rows();
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) s.eigenvectors.col(j) = solver.eigenvectors().col(m - 1 - j);
  return s;
}

}  // namespace

FactorEstimate estimate_factors(const Eigen::MatrixXd& x, int d) {
  const Eigen::Index t = x.rows();
  const Eigen::Index n = x.cols();
  if (t < 2 || n < 2) throw std::invalid_argument("panel must have at least 2 rows and 2 columns");
  if (d < 1 || d > std::min(t, n)) {
    throw std::invalid_argument("number of factors must be in [1, min(N,T)]");
  }
  require_finite(x);

  const bool time_side = t <= n;
  const Spectrum s =
      small_gram_spectrum(x, time_side ? kernels::GramSide::Rows : kernels::GramSide::Cols);

  FactorEstimate est;
  est.d = d;
  est.eigenvalues = s.eigenvalues.head(d);
  const double sqrt_t = std::sqrt(static_cast<double>(t));

  if (time_side) {
    est.factors = sqrt_t * s.eigenvectors.leftCols(d);
  } else {
    // Recover time-side eigenvectors from the N x N route: u_j = X w_j / s_j
    // with singular value s_j = sqrt(N*T*mu_j).
    est.factors.resize(t, d);
    for (int j = 0; j < d; ++j) {
      const double mu = s.eigenvalues(j);
      if (mu <= 0.0) {
        throw NumericalFailure("requested factor beyond the numerical rank of the panel");
      }
      const double sv = std::sqrt(static_cast<double>(n) * static_cast<double>(t) * mu);
      est.factors.col(j) = sqrt_t / sv * (x * s.eigenvectors.col(j));
    }
  }
  est.loadings = x.transpose() * est.factors / static_cast<double>(t);
  apply_sign_convention(est.factors, est.loadings);

  const Eigen::Index spectrum_len = s.eigenvalues.size();
  if (d < spectrum_len) {
    const double gap = s.eigenvalues(d - 1) - s.eigenvalues(d);
    const double scale = std::abs(s.eigenvalues(d - 1));
    if (gap <= kDegenerateRelTol * std::max(scale, std::numeric_limits<double>::min())) {
      est.degenerate_spectrum = true;
    }
  }
  return est;
}

FactorEstimate estimate_factors(const PanelMatrix& x, int d) {
  return estimate_factors(x.values, d);
}

Eigen::MatrixXd rotation_matrix(const FactorEstimate& estimate,
                                const Eigen::MatrixXd& true_factors,
                                const Eigen::MatrixXd& true_loadings) {
  const int d = estimate.d;
  if (true_factors.rows() != estimate.factors.rows() || true_factors.cols() != d ||
      true_loadings.cols() != d || true_loadings.rows() != estimate.loadings.rows()) {
    throw std::invalid_argument("true factor/loading dimensions do not match the estimate");
  }
  const double top = estimate.eigenvalues(0);
  for (int j = 0; j < d; ++j) {
    const double ev = estimate.eigenvalues(j);
    if (ev <= 0.0 || ev <= 1e-12 * top) {
      throw SingularRotationError("eigenvalue " + std::to_string(j + 1) +
                                  " is at or below tolerance; rotation undefined");
    }
  }
  const double n = static_cast<double>(true_loadings.rows());
  const double t = static_cast<double>(true_factors.rows());
  const Eigen::MatrixXd lam = true_loadings.transpose() * true_loadings / n;
  const Eigen::MatrixXd cross = true_factors.transpose() * estimate.factors / t;
  return lam * cross * estimate.eigenvalues.cwiseInverse().asDiagonal();
}

FactorSelection select_num_factors(const Eigen::MatrixXd& x, int d_max) {
  const Eigen::Index t = x.rows();
  const Eigen::Index n = x.cols();
  if (t < 2 || n < 2) throw std::invalid_argument("panel must have at least 2 rows and 2 columns");
  if (d_max < 1 || d_max > std::min(t, n) - 1) {
    throw std::invalid_argument("d_max must be in [1, min(N,T)-1]");
  }
  require_finite(x);

  const bool time_side = t <= n;
  const Spectrum s =
      small_gram_spectrum(x, time_side ? kernels::GramSide::Rows : kernels::GramSide::Cols);

  // SSR(d)/(N*T) telescopes down the spectrum: it equals the sum of the
  // eigenvalues beyond the first d. Floor at machine precision of the total
  // so a numerically exact fit does not reward spurious extra factors.
  const double total = s.eigenvalues.sum();
  const double floor = std::numeric_limits<double>::epsilon() * std::max(total, 0.0);
  const double c_nt = static_cast<double>(n) * static_cast<double>(t) /
                      (static_cast<double>(n) + static_cast<double>(t));
  const double penalty_unit = std::log(c_nt) / c_nt;

  FactorSelection sel;
  sel.ic_values.resize(d_max + 1);
  double tail = total;
  int best = 0;
  for (int d = 0; d <= d_max; ++d) {
    if (d > 0) tail -= s.eigenvalues(d - 1);
    const double v = std::max(tail, floor);
    sel.ic_values(d) = std::log(v) + d * penalty_unit;
    if (sel.ic_values(d) < sel.ic_values(best)) best = d;
  }
  sel.d_hat = best;
  return sel;
}

FactorSelection select_num_factors(const PanelMatrix& x, int d_max) {
  return select_num_factors(x.values, d_max);
}

}  // namespace binfar
