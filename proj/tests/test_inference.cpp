#include <algorithm>
#include <cmath>

#include "binfar/errors.hpp"
#include "binfar/inference.hpp"
#include "binfar/parallel.hpp"
#include "binfar/simulate.hpp"
#include "doctest.h"

using namespace binfar;

namespace {

struct Instance {
  SimDraw draw;
  Design design;
};

Instance dgp1_instance(int n, int t, std::uint64_t seed) {
  DgpConfig config;
  config.n = n;
  config.t = t;
  config.seed = seed;
  Instance inst;
  inst.draw = generate(config);
  const FactorEstimate est = estimate_factors(inst.draw.panel, 2);
  inst.design.w = inst.draw.w.topRows(t - 1);
  inst.design.f = est.factors.topRows(t - 1);
  inst.design.y = inst.draw.y;
  return inst;
}

}  // namespace

TEST_CASE("spec resolution") {
  BootstrapSpec spec;
  spec.num_blocks = 25;
  spec.replications = 10;
  const BootstrapSpec resolved = resolve_bootstrap_spec(spec, 199);
  CHECK(resolved.block_length == 7);
  CHECK(resolved.num_blocks == 25);

  BootstrapSpec by_q;
  by_q.block_length = 6;
  by_q.replications = 10;
  CHECK(resolve_bootstrap_spec(by_q, 199).num_blocks == 33);

  BootstrapSpec defaulted;
  defaulted.replications = 10;
  const BootstrapSpec cube = resolve_bootstrap_spec(defaulted, 199);
  CHECK(cube.block_length == 6);  // ceil(199^(1/3))
  CHECK(cube.num_blocks == 33);

  BootstrapSpec bad;
  bad.num_blocks = 500;
  bad.replications = 1;
  CHECK_THROWS_AS(resolve_bootstrap_spec(bad, 100), std::invalid_argument);
}

TEST_CASE("block starts are reproducible and in range") {
  BootstrapSpec spec;
  spec.num_blocks = 10;
  spec.block_length = 7;
  spec.replications = 4;
  spec.seed = 31;
  const std::vector<int> a = mbb_block_starts(spec, 2);
  const std::vector<int> b = mbb_block_starts(spec, 2);
  CHECK(a == b);
  CHECK(a.size() == 10);
  for (int s : a) {
    CHECK(s >= 0);
    CHECK(s <= 7 * 9);
  }
  CHECK(mbb_block_starts(spec, 3) != a);
}

TEST_CASE("bootstrap samples copy contiguous blocks verbatim") {
  const Instance inst = dgp1_instance(30, 81, 7);
  BootstrapSpec spec;
  spec.num_blocks = 8;
  spec.replications = 3;
  spec.seed = 11;
  const BootstrapSpec resolved = resolve_bootstrap_spec(spec, inst.design.rows());
  const std::vector<int> rows = mbb_row_indices(resolved, 1);
  CHECK(rows.size() == static_cast<std::size_t>(resolved.block_length * resolved.num_blocks));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i] >= 0);
    CHECK(rows[i] < inst.design.rows());
    if (i % static_cast<std::size_t>(resolved.block_length) != 0) {
      CHECK(rows[i] == rows[i - 1] + 1);  // contiguous inside each block
    }
  }
}

TEST_CASE("single full-length block reproduces the original fit exactly") {
  const Instance inst = dgp1_instance(40, 101, 13);
  BootstrapSpec spec;
  spec.num_blocks = 1;
  spec.replications = 5;
  spec.seed = 3;
  const BootstrapResult result = moving_block_bootstrap(
      inst.design, inst.draw.panel, 2, LinkFunction::probit(), spec, 0.9);

  CHECK(result.failed_draws == 0);
  CHECK(result.standard_errors.cwiseAbs().maxCoeff() == 0.0);

  // Every draw equals the two-step fit on the same (full) sample.
  const FactorEstimate est = estimate_factors(inst.draw.panel.values.topRows(100), 2);
  Design trimmed = inst.design;
  trimmed.f = est.factors;
  const BinaryFarFit direct = fit(trimmed, LinkFunction::probit());
  for (Eigen::Index b = 0; b < result.draws.rows(); ++b) {
    CHECK((result.draws.row(b).transpose() - direct.beta).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bootstrap is reproducible across runs and thread counts") {
  const Instance inst = dgp1_instance(30, 81, 17);
  BootstrapSpec spec;
  spec.replications = 12;
  spec.seed = 23;
  par::set_thread_cap(1);
  const BootstrapResult serial = moving_block_bootstrap(
      inst.design, inst.draw.panel, 2, LinkFunction::probit(), spec, 0.9);
  par::set_thread_cap(0);
  const BootstrapResult threaded = moving_block_bootstrap(
      inst.design, inst.draw.panel, 2, LinkFunction::probit(), spec, 0.9);
  CHECK(serial.draws == threaded.draws);
  CHECK(serial.standard_errors == threaded.standard_errors);
  CHECK(serial.ci_lower == threaded.ci_lower);
}

TEST_CASE("narrower level nests inside wider level on the same draws") {
  const Instance inst = dgp1_instance(30, 81, 19);
  BootstrapSpec spec;
  spec.replications = 30;
  spec.seed = 29;
  const BootstrapResult wide = moving_block_bootstrap(
      inst.design, inst.draw.panel, 2, LinkFunction::probit(), spec, 0.95);
  const BootstrapResult narrow = moving_block_bootstrap(
      inst.design, inst.draw.panel, 2, LinkFunction::probit(), spec, 0.5);
  for (Eigen::Index j = 0; j < wide.ci_lower.size(); ++j) {
    CHECK(narrow.ci_lower(j) >= wide.ci_lower(j));
    CHECK(narrow.ci_upper(j) <= wide.ci_upper(j));
    CHECK(narrow.ci_lower(j) <= narrow.ci_upper(j));
  }
}

TEST_CASE("level validation") {
  const Instance inst = dgp1_instance(30, 81, 23);
  BootstrapSpec spec;
  spec.replications = 2;
  CHECK_THROWS_AS(moving_block_bootstrap(inst.design, inst.draw.panel, 2,
                                         LinkFunction::probit(), spec, 1.5),
                  std::invalid_argument);
}
