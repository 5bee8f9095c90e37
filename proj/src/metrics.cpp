#include "binfar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "binfar/errors.hpp"

namespace binfar {

RocCurve roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  const Eigen::Index n = scores.size();
  if (labels.size() != n) throw std::invalid_argument("scores and labels differ in length");
  Eigen::Index n_pos = 0, n_neg = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels(i) != 0.0 && labels(i) != 1.0) {
      throw std::invalid_argument("labels must contain only 0 and 1");
    }
    (labels(i) > 0.5 ? n_pos : n_neg) += 1;
  }
  if (n_pos == 0 || n_neg == 0) {
    throw DegenerateLabelsError("ROC needs at least one positive and one negative label");
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return scores(a) > scores(b); });

  // Walk tie groups from the highest score down; after each group the rates
  // give one ROC point for the rule "score > threshold".
  std::vector<double> thr{std::numeric_limits<double>::infinity()};
  std::vector<double> tp{0.0}, fp{0.0};
  Eigen::Index cum_pos = 0, cum_neg = 0;
  double area = 0.0;
  Eigen::Index i = 0;
  while (i < n) {
    const double v = scores(order[i]);
    Eigen::Index tie_pos = 0, tie_neg = 0;
    while (i < n && scores(order[i]) == v) {
      (labels(order[i]) > 0.5 ? tie_pos : tie_neg) += 1;
      ++i;
    }
    const double tp_prev = static_cast<double>(cum_pos) / static_cast<double>(n_pos);
    const double fp_prev = static_cast<double>(cum_neg) / static_cast<double>(n_neg);
    cum_pos += tie_pos;
    cum_neg += tie_neg;
    const double tp_cur = static_cast<double>(cum_pos) / static_cast<double>(n_pos);
    const double fp_cur = static_cast<double>(cum_neg) / static_cast<double>(n_neg);
    area += (fp_cur - fp_prev) * 0.5 * (tp_cur + tp_prev);
    thr.push_back(v);
    tp.push_back(tp_cur);
    fp.push_back(fp_cur);
  }

  RocCurve out;
  out.thresholds = Eigen::Map<Eigen::VectorXd>(thr.data(), static_cast<Eigen::Index>(thr.size()));
  out.tp_rate = Eigen::Map<Eigen::VectorXd>(tp.data(), static_cast<Eigen::Index>(tp.size()));
  out.fp_rate = Eigen::Map<Eigen::VectorXd>(fp.data(), static_cast<Eigen::Index>(fp.size()));
  out.auc = area;
  return out;
}

double pseudo_r2(double loglik_unconstrained, double loglik_constrained, int n) {
  if (n <= 0) throw std::invalid_argument("sample size must be positive");
  if (loglik_constrained == 0.0) {
    throw UndefinedMeasureError("constrained log-likelihood of zero; pseudo-R^2 undefined");
  }
  if (loglik_unconstrained > 0.0 || loglik_constrained > 0.0 ||
      loglik_constrained > loglik_unconstrained) {
    throw std::invalid_argument(
        "log-likelihoods must satisfy logLc <= logLu <= 0 for a binary model");
  }
  const double ratio = loglik_unconstrained / loglik_constrained;
  const double exponent = -(2.0 / static_cast<double>(n)) * loglik_constrained;
  return 1.0 - std::pow(ratio, exponent);
}

Eigen::VectorXd rotate_coefficients(const Eigen::VectorXd& beta_true,
                                    const Eigen::MatrixXd& h_matrix) {
  const Eigen::Index d = h_matrix.rows();
  if (h_matrix.cols() != d) throw std::invalid_argument("H must be square");
  if (beta_true.size() < d + 1) {
    throw std::invalid_argument("beta shorter than the factor block plus intercept");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(h_matrix);
  if (!lu.isInvertible()) throw SingularRotationError("rotation matrix H is singular");

  Eigen::VectorXd out = beta_true;
  out.tail(d) = lu.solve(beta_true.tail(d));
  return out;
}

RmseReport rmse(const Eigen::MatrixXd& estimates, const Eigen::MatrixXd& beta_rotated,
                const std::vector<std::string>& names) {
  if (estimates.rows() != beta_rotated.rows() || estimates.cols() != beta_rotated.cols()) {
    throw std::invalid_argument("estimate and truth matrices differ in shape");
  }
  if (estimates.rows() == 0) throw std::invalid_argument("need at least one replication row");
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != estimates.cols()) {
    throw std::invalid_argument("coefficient name count does not match columns");
  }

  const double r = static_cast<double>(estimates.rows());
  const Eigen::MatrixXd err = estimates - beta_rotated;
  RmseReport out;
  out.rmse_all = std::sqrt(err.squaredNorm() / r);
  for (Eigen::Index j = 0; j < err.cols(); ++j) {
    const std::string name = names.empty() ? "b" + std::to_string(j) : names[j];
    out.per_coefficient.emplace_back(name, std::sqrt(err.col(j).squaredNorm() / r));
  }
  return out;
}

namespace {

// R^2 (centered) of y on [1, X] via normal equations; columns of X are few.
double r_squared(const Eigen::VectorXd& y, const Eigen::MatrixXd& x) {
  const Eigen::Index n = y.size();
  Eigen::MatrixXd z(n, x.cols() + 1);
  z.col(0).setOnes();
  z.rightCols(x.cols()) = x;
  const Eigen::VectorXd coef = (z.transpose() * z).ldlt().solve(z.transpose() * y);
  const double ssr = (y - z * coef).squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  if (sst <= 0.0) return 0.0;
  return 1.0 - ssr / sst;
}

double adjust(double r2, Eigen::Index n, Eigen::Index k) {
  if (n - k - 1 <= 0) return r2;
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - k - 1);
}

}  // namespace

MarginalR2 marginal_r2(const PanelMatrix& panel, const FactorEstimate& factors) {
  const int d = factors.d;
  if (d <= 0) throw std::invalid_argument("need at least one factor");
  if (factors.factors.rows() != panel.t()) {
    throw std::invalid_argument("factor estimate does not match the panel length");
  }
  const Eigen::Index n_series = panel.n();
  const Eigen::Index t = panel.t();

  MarginalR2 out;
  out.per_series.resize(n_series, d);
  out.factor_average = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < n_series; ++i) {
    double prev = 0.0;
    for (int r = 1; r <= d; ++r) {
      const double cur = adjust(r_squared(panel.values.col(i), factors.factors.leftCols(r)), t, r);
      out.per_series(i, r - 1) = cur - prev;
      prev = cur;
    }
  }
  for (int r = 0; r < d; ++r) {
    out.factor_average(r) = out.per_series.col(r).mean();
  }
  return out;
}

}  // namespace binfar
