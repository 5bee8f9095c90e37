#include <Eigen/Dense>
#include <cmath>

#include "binfar/errors.hpp"
#include "binfar/factors.hpp"
#include "binfar/rng.hpp"
#include "binfar/simulate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace binfar;

namespace {

Eigen::MatrixXd random_panel(int t, int n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  Eigen::MatrixXd x(t, n);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < n; ++j) x(i, j) = rng.normal();
  }
  return x;
}

// Low-rank panel with planted factors plus optional noise.
Eigen::MatrixXd planted_panel(int t, int n, int rank, double noise, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  Eigen::MatrixXd f(t, rank), lam(n, rank);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < rank; ++j) f(i, j) = rng.normal();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) lam(i, j) = rng.uniform(0.0, 2.0);
  }
  Eigen::MatrixXd x = f * lam.transpose();
  if (noise > 0.0) {
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < n; ++j) x(i, j) += noise * rng.normal();
    }
  }
  return x;
}

}  // namespace

TEST_CASE("noiseless rank-1 panel is reproduced exactly") {
  const Eigen::MatrixXd x = planted_panel(50, 20, 1, 0.0, 7);
  const FactorEstimate est = estimate_factors(x, 1);
  const double rss = (x - est.factors * est.loadings.transpose()).squaredNorm();
  CHECK(rss < 1e-10);
}

TEST_CASE("4x3 example matches a Jacobi eigensolver oracle") {
  Eigen::MatrixXd x(4, 3);
  x << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1;
  const FactorEstimate est = estimate_factors(x, 1);

  // Oracle: explicit 4x4 Gram matrix, cyclic Jacobi decomposition.
  const Eigen::MatrixXd gram = x * x.transpose() / 12.0;
  const oracles::JacobiEig eig = oracles::jacobi_symmetric_eig(gram);
  Eigen::VectorXd expected = 2.0 * eig.vectors.col(0);
  // Match the library's sign rule: loading column sum nonnegative.
  if ((x.transpose() * expected).sum() < 0.0) expected = -expected;

  CHECK(est.eigenvalues(0) == doctest::Approx(eig.values(0)).epsilon(1e-12));
  for (int i = 0; i < 4; ++i) {
    CHECK(est.factors(i, 0) == doctest::Approx(expected(i)).epsilon(1e-10));
  }
}

TEST_CASE("factor normalization and projection identity") {
  const Eigen::MatrixXd x = planted_panel(80, 40, 3, 0.5, 11);
  const FactorEstimate est = estimate_factors(x, 3);

  const Eigen::MatrixXd gram_f = est.factors.transpose() * est.factors / 80.0;
  CHECK((gram_f - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((est.loadings - x.transpose() * est.factors / 80.0).cwiseAbs().maxCoeff() < 1e-12);

  // (1/(NT)) X X' F = F diag(eigenvalues)
  const Eigen::MatrixXd lhs = x * (x.transpose() * est.factors) / (80.0 * 40.0);
  const Eigen::MatrixXd rhs = est.factors * est.eigenvalues.asDiagonal();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff() < 1e-6);

  SUBCASE("eigenvalues descend") {
    for (int j = 1; j < 3; ++j) CHECK(est.eigenvalues(j) <= est.eigenvalues(j - 1));
    CHECK(est.eigenvalues(2) >= 0.0);
  }
}

TEST_CASE("both Gram routes agree on the fitted common component") {
  // 90 x 30 runs the N-side route; its 25-row top slice runs the T-side one.
  const Eigen::MatrixXd tall = planted_panel(90, 30, 2, 1.0, 13);
  const FactorEstimate n_side = estimate_factors(tall, 2);
  const FactorEstimate t_side = estimate_factors(tall.topRows(25), 2);
  CHECK((n_side.factors.transpose() * n_side.factors / 90.0 - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  CHECK((t_side.factors.transpose() * t_side.factors / 25.0 - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-8);

  // The fitted common component F L' is route-invariant: compare the N-side
  // result against the projection onto the top time-side eigenvectors.
  const Eigen::MatrixXd fit = n_side.factors * n_side.loadings.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> direct(tall * tall.transpose() / (90.0 * 30.0));
  const Eigen::MatrixXd top = direct.eigenvectors().rightCols(2);
  const Eigen::MatrixXd proj = top * top.transpose() * tall;
  CHECK((fit - proj).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("scale equivariance: factors invariant, loadings scale") {
  const Eigen::MatrixXd x = planted_panel(40, 25, 2, 1.0, 17);
  const FactorEstimate base = estimate_factors(x, 2);
  const FactorEstimate scaled = estimate_factors((3.5 * x).eval(), 2);
  CHECK((base.factors - scaled.factors).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((3.5 * base.loadings - scaled.loadings).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("determinism: identical input, bit-identical estimate") {
  const Eigen::MatrixXd x = random_panel(60, 30, 23);
  const FactorEstimate a = estimate_factors(x, 4);
  const FactorEstimate b = estimate_factors(x, 4);
  CHECK(a.factors == b.factors);
  CHECK(a.loadings == b.loadings);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("degenerate spectrum raises the warning flag, not an error") {
  // Identity panel: all Gram eigenvalues tie.
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(12, 12) * 2.0;
  const FactorEstimate est = estimate_factors(x, 2);
  CHECK(est.degenerate_spectrum);

  const FactorEstimate clean = estimate_factors(planted_panel(40, 20, 2, 0.3, 29), 2);
  CHECK_FALSE(clean.degenerate_spectrum);
}

TEST_CASE("argument validation") {
  const Eigen::MatrixXd x = random_panel(20, 10, 31);
  CHECK_THROWS_AS(estimate_factors(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_factors(x, 11), std::invalid_argument);
  Eigen::MatrixXd bad = x;
  bad(3, 3) = std::nan("");
  CHECK_THROWS_AS(estimate_factors(bad, 2), std::invalid_argument);
  CHECK_THROWS_AS(select_num_factors(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(select_num_factors(x, 10), std::invalid_argument);
}

TEST_CASE("rotation matrix: self-rotation and scalar case") {
  const Eigen::MatrixXd x = planted_panel(100, 50, 2, 1.0, 37);
  const FactorEstimate est = estimate_factors(x, 2);

  SUBCASE("self-rotation equals (L'L/N) V^-1") {
    const Eigen::MatrixXd h = rotation_matrix(est, est.factors, est.loadings);
    const Eigen::MatrixXd expected = (est.loadings.transpose() * est.loadings / 50.0) *
                                     est.eigenvalues.cwiseInverse().asDiagonal();
    CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("scalar case H = a*b/v") {
    const FactorEstimate one = estimate_factors(x, 1);
    Eigen::MatrixXd lam(50, 1), f(100, 1);
    CounterRng rng(5, 0);
    for (int i = 0; i < 50; ++i) lam(i, 0) = rng.uniform(0.5, 1.5);
    for (int i = 0; i < 100; ++i) f(i, 0) = rng.normal();
    const double a = (lam.transpose() * lam)(0, 0) / 50.0;
    const double b = (f.transpose() * one.factors)(0, 0) / 100.0;
    const Eigen::MatrixXd h = rotation_matrix(one, f, lam);
    CHECK(h(0, 0) == doctest::Approx(a * b / one.eigenvalues(0)).epsilon(1e-12));
  }
}

TEST_CASE("rotation under the simulation DGP stays bounded") {
  DgpConfig config;
  config.n = 300;
  config.t = 400;
  config.seed = 99;
  const SimDraw draw = generate(config);
  const FactorEstimate est = estimate_factors(draw.panel, 2);
  const Eigen::MatrixXd h = rotation_matrix(est, draw.f_true, draw.loadings_true);
  const double norm = h.norm();
  CHECK(std::isfinite(norm));
  CHECK(norm < 10.0);
}

TEST_CASE("select_num_factors: noiseless rank-2 panel picks 2") {
  const Eigen::MatrixXd x = planted_panel(100, 60, 2, 0.0, 41);
  const FactorSelection sel = select_num_factors(x, 8);
  CHECK(sel.d_hat == 2);
  CHECK(sel.ic_values.size() == 9);
}

TEST_CASE("IC values match a from-scratch residual computation") {
  const Eigen::MatrixXd x = planted_panel(30, 20, 2, 1.0, 43);
  const FactorSelection sel = select_num_factors(x, 4);
  const double c = 30.0 * 20.0 / 50.0;
  for (int d = 0; d <= 4; ++d) {
    double ssr;
    if (d == 0) {
      ssr = x.squaredNorm();
    } else {
      const FactorEstimate est = estimate_factors(x, d);
      ssr = (x - est.factors * est.loadings.transpose()).squaredNorm();
    }
    const double expected = std::log(ssr / 600.0) + d * std::log(c) / c;
    CHECK(sel.ic_values(d) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("factor estimation error shrinks with the panel (small-R rate check)") {
  auto mean_factor_error = [](int n, int t, std::uint64_t seed_base) {
    double total = 0.0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) {
      DgpConfig config;
      config.n = n;
      config.t = t;
      config.seed = seed_base + static_cast<std::uint64_t>(r);
      const SimDraw draw = generate(config);
      const FactorEstimate est = estimate_factors(draw.panel, 2);
      const Eigen::MatrixXd h = rotation_matrix(est, draw.f_true, draw.loadings_true);
      total += (est.factors - draw.f_true * h).squaredNorm() / static_cast<double>(t);
    }
    return total / 20.0;
  };
  const double coarse = mean_factor_error(100, 100, 1000);
  const double fine = mean_factor_error(300, 300, 2000);
  CHECK(coarse / fine > 1.5);
}
