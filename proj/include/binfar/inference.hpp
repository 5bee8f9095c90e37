#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "binfar/factors.hpp"
#include "binfar/glm.hpp"

namespace binfar {

struct BootstrapSpec {
  int num_blocks = 0;    // L
  int block_length = 0;  // q
  int replications = 1;  // B
  std::uint64_t seed = 0;
};

// Fills in whichever of L and q was left at zero: given L, q = floor(n/L);
// given q, L = floor(n/q); given neither, q = ceil(n^(1/3)) and L = floor(n/q),
// where n = T - h is the usable sample length.
BootstrapSpec resolve_bootstrap_spec(BootstrapSpec spec, Eigen::Index usable_rows);

struct BootstrapResult {
  Eigen::MatrixXd draws;           // converged replications x k
  Eigen::VectorXd standard_errors; // per coordinate over converged draws
  Eigen::VectorXd ci_lower;
  Eigen::VectorXd ci_upper;
  int failed_draws = 0;
  double level = 0.0;
};

// Uniform block starts for one replication: L values on {0, ..., q*(L-1)},
// drawn from stream `replication` of the spec seed. Exposed for testing.
std::vector<int> mbb_block_starts(const BootstrapSpec& spec, int replication);

// Design-row source indices of one bootstrap sample (length q*L).
std::vector<int> mbb_row_indices(const BootstrapSpec& spec, int replication);

// Moving-block bootstrap of the two-step estimator: resample q-length blocks
// of (y_{t+h}, w_t, x_t) triples, re-estimate factors on the resampled panel
// with the same d, refit the MLE, and collect the coefficient draws. The
// sample is trimmed at the end to q*L rows. Percentile intervals at `level`.
BootstrapResult moving_block_bootstrap(const Design& design, const PanelMatrix& panel, int d,
                                       const LinkFunction& link, const BootstrapSpec& spec,
                                       double level);

}  // namespace binfar
