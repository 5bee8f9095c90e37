#include "binfar/kernels.hpp"

#include <cmath>

#include "binfar/parallel.hpp"

namespace binfar::kernels {

namespace {

// One Gram entry: dot product of rows (or columns) i and j of x, fixed
// summation order independent of the calling thread.
inline double gram_entry(const Eigen::MatrixXd& x, GramSide side, Eigen::Index i,
                         Eigen::Index j) {
  if (side == GramSide::Rows) return x.row(i).dot(x.row(j));
  return x.col(i).dot(x.col(j));
}

}  // namespace

Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& x, GramSide side) {
  const Eigen::Index m = side == GramSide::Rows ? x.rows() : x.cols();
  const double scale = 1.0 / (static_cast<double>(x.rows()) * static_cast<double>(x.cols()));
  Eigen::MatrixXd g(m, m);
  par::parallel_for(m, [&](std::int64_t i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double v = gram_entry(x, side, i, j) * scale;
      g(i, j) = v;
      g(j, i) = v;
    }
  });
  return g;
}

Eigen::MatrixXd scaled_gram_ref(const Eigen::MatrixXd& x, GramSide side) {
  const Eigen::Index m = side == GramSide::Rows ? x.rows() : x.cols();
  const Eigen::Index inner = side == GramSide::Rows ? x.cols() : x.rows();
  const double scale = 1.0 / (static_cast<double>(x.rows()) * static_cast<double>(x.cols()));
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < inner; ++k) {
        acc += side == GramSide::Rows ? x(i, k) * x(j, k) : x(k, i) * x(k, j);
      }
      g(i, j) = acc * scale;
    }
  }
  return g;
}

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  const double n = static_cast<double>(x.rows());
  par::parallel_for(x.cols(), [&](std::int64_t j) {
    const double mean = x.col(j).sum() / n;
    const double ss = (x.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / (n - 1.0));
    out.col(j) = (x.col(j).array() - mean) / (sd > 0.0 ? sd : 1.0);
  });
  return out;
}

Eigen::MatrixXd standardize_columns_ref(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= n;
    double ss = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    for (Eigen::Index i = 0; i < x.rows(); ++i) out(i, j) = (x(i, j) - mean) / (sd > 0.0 ? sd : 1.0);
  }
  return out;
}

}  // namespace binfar::kernels
