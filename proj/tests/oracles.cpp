#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracles {

JacobiEig jacobi_symmetric_eig(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  JacobiEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[j], order[j]);
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

Eigen::VectorXd irls_fit(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                         const binfar::LinkFunction& link, int max_iter, double tol) {
  const Eigen::Index n = z.rows();
  const Eigen::Index k = z.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd ztwz = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd ztwu = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double eta = z.row(i).dot(beta);
      double mu = link.cdf(eta);
      mu = std::min(std::max(mu, 1e-12), 1.0 - 1e-12);
      const double dmu = link.pdf(eta);
      if (dmu <= 0.0) continue;
      const double weight = dmu * dmu / (mu * (1.0 - mu));
      const double working = eta + (y(i) - mu) / dmu;
      ztwz += weight * z.row(i).transpose() * z.row(i);
      ztwu += weight * z.row(i).transpose() * working;
    }
    const Eigen::VectorXd next = ztwz.ldlt().solve(ztwu);
    const double change = (next - beta).lpNorm<Eigen::Infinity>();
    beta = next;
    if (change < tol) break;
  }
  return beta;
}

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi(i) += step;
    lo(i) -= step;
    g(i) = (f(hi) - f(lo)) / (2.0 * step);
  }
  return g;
}

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& g,
                            const Eigen::VectorXd& x, double step) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd j(g(x).size(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi(i) += step;
    lo(i) -= step;
    j.col(i) = (g(hi) - g(lo)) / (2.0 * step);
  }
  return j;
}

double pair_count_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  double concordant = 0.0;
  double pairs = 0.0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    if (labels(i) < 0.5) continue;
    for (Eigen::Index j = 0; j < scores.size(); ++j) {
      if (labels(j) > 0.5) continue;
      pairs += 1.0;
      if (scores(i) > scores(j)) {
        concordant += 1.0;
      } else if (scores(i) == scores(j)) {
        concordant += 0.5;
      }
    }
  }
  return concordant / pairs;
}

double normal_quantile_bisect(double p) {
  double lo = -12.0, hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double naive_log_likelihood(const Eigen::VectorXd& beta, const binfar::Design& design,
                            const binfar::LinkFunction& link) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    double u = beta(0);
    for (Eigen::Index j = 0; j < design.p(); ++j) u += beta(1 + j) * design.w(i, j);
    for (Eigen::Index j = 0; j < design.d(); ++j) u += beta(1 + design.p() + j) * design.f(i, j);
    double prob = link.cdf(u);
    prob = std::min(std::max(prob, 1e-12), 1.0 - 1e-12);
    total += design.y(i) > 0.5 ? std::log(prob) : std::log(1.0 - prob);
  }
  return total;
}

double plain_r_squared(const Eigen::VectorXd& y, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd z(y.size(), x.cols() + 1);
  z.col(0).setOnes();
  z.rightCols(x.cols()) = x;
  const Eigen::VectorXd coef = z.colPivHouseholderQr().solve(y);
  const double ssr = (y - z * coef).squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  return 1.0 - ssr / sst;
}

}  // namespace oracles
