#pragma once

#include <Eigen/Dense>

namespace binfar::kernels {

enum class GramSide {
  Rows,  // X * X^T / (N*T), T x T
  Cols,  // X^T * X / (N*T), N x N
};

// Scaled Gram matrix of a T x N panel. Row-parallel: every entry (i,j) is a
// single dot product computed by one thread, so the result is bit-identical
// for any thread count.
Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& x, GramSide side);

// Naive triple-loop serial reference for scaled_gram.
Eigen::MatrixXd scaled_gram_ref(const Eigen::MatrixXd& x, GramSide side);

// Per-column standardization to mean 0 and unit sample variance (n-1
// denominator). Column-parallel, bit-identical for any thread count.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

// Serial reference for standardize_columns.
Eigen::MatrixXd standardize_columns_ref(const Eigen::MatrixXd& x);

}  // namespace binfar::kernels
