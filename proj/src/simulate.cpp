#include "binfar/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/parallel.hpp"
#include "binfar/rng.hpp"

namespace binfar {

namespace {

// Sub-stream layout inside one draw's seed.
enum Stream : std::uint64_t {
  kStreamW = 0,
  kStreamF = 1,
  kStreamLoadings = 2,
  kStreamIdio = 3,
  kStreamEps = 4,
};

double draw_innovation(CounterRng& rng, ErrorLink link) {
  return link == ErrorLink::Normal ? rng.normal() : rng.logistic_unit_variance();
}

}  // namespace

LinkFunction fitting_link(ErrorLink link) {
  return link == ErrorLink::Normal ? LinkFunction::probit()
                                   : LinkFunction::logistic_unit_variance();
}

SimDraw generate(const DgpConfig& config) {
  const int n = config.n;
  const int t = config.t;
  const int h = config.h;
  if (n < 10 || t < 10) throw std::invalid_argument("DGP needs n >= 10 and t >= 10");
  if (h < 0 || h >= t) throw std::invalid_argument("horizon must be in [0, T)");
  if (config.rho_eps < 0.0 || config.rho_eps >= 1.0) {
    throw std::invalid_argument("rho_eps must be in [0, 1)");
  }

  SimDraw draw;
  draw.beta_true.resize(5);
  draw.beta_true << -2.0, 1.0, 1.0, 1.0, 1.0;

  // Observed regressors: w1 ~ U(0,2), w2 ~ U(-3,3), i.i.d. over time.
  {
    CounterRng rng(config.seed, kStreamW);
    draw.w.resize(t, 2);
    for (int s = 0; s < t; ++s) {
      draw.w(s, 0) = rng.uniform(0.0, 2.0);
      draw.w(s, 1) = rng.uniform(-3.0, 3.0);
    }
  }

  // Latent factors: AR(1) with rho_i = 0.8^i, unit-variance innovations
  // scaled by sqrt(1 - rho^2), initial values U(0,2), no burn-in discard.
  {
    CounterRng rng(config.seed, kStreamF);
    const double rho[2] = {0.8, 0.64};
    double prev[2] = {rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    draw.f_true.resize(t, 2);
    for (int s = 0; s < t; ++s) {
      for (int j = 0; j < 2; ++j) {
        prev[j] = rho[j] * prev[j] + std::sqrt(1.0 - rho[j] * rho[j]) * rng.normal();
        draw.f_true(s, j) = prev[j];
      }
    }
  }

  {
    CounterRng rng(config.seed, kStreamLoadings);
    draw.loadings_true.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      draw.loadings_true(i, 0) = rng.uniform(0.0, 6.0);
      draw.loadings_true(i, 1) = rng.uniform(0.0, 6.0);
    }
  }

  {
    CounterRng rng(config.seed, kStreamIdio);
    draw.panel.values.resize(t, n);
    for (int s = 0; s < t; ++s) {
      for (int i = 0; i < n; ++i) {
        draw.panel.values(s, i) = draw.loadings_true(i, 0) * draw.f_true(s, 0) +
                                  draw.loadings_true(i, 1) * draw.f_true(s, 1) + rng.normal();
      }
    }
  }

  // Errors: i.i.d. when rho_eps = 0, else AR(1) with unit-variance aggregate;
  // the first value is drawn from the innovation distribution directly.
  // eps(s) stands for the paper's epsilon_{s+1}.
  {
    CounterRng rng(config.seed, kStreamEps);
    Eigen::VectorXd eps(t);
    const double rho = config.rho_eps;
    eps(0) = draw_innovation(rng, config.error_link);
    for (int s = 1; s < t; ++s) {
      const double nu = draw_innovation(rng, config.error_link);
      eps(s) = rho == 0.0 ? nu : rho * eps(s - 1) + std::sqrt(1.0 - rho * rho) * nu;
    }
    draw.y.resize(t - h);
    for (int s = 0; s < t - h; ++s) {
      const double index = draw.beta_true(0) + draw.w.row(s) * draw.beta_true.segment(1, 2) +
                           draw.f_true.row(s) * draw.beta_true.segment(3, 2);
      draw.y(s) = index - eps(s + h) >= 0.0 ? 1.0 : 0.0;
    }
  }

  return draw;
}

namespace {

struct RepOutcome {
  bool ok = false;
  bool failed = false;
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd beta_rotated;
  double auc = 0.0;
  int d_used = 0;
};

RepOutcome run_replication(const DgpConfig& config, bool use_ic) {
  RepOutcome out;
  const SimDraw draw = generate(config);
  const int usable = config.t - config.h;

  int d = 2;
  if (use_ic) {
    d = select_num_factors(draw.panel, kDefaultDMax).d_hat;
  }
  out.d_used = d;
  if (d != 2) {
    // Wrong model order: the rotated coefficient target is undefined, so the
    // replication only contributes to the selection-frequency tally.
    return out;
  }

  try {
    const FactorEstimate est = estimate_factors(draw.panel, d);

    Design design;
    design.w = draw.w.topRows(usable);
    design.f = est.factors.topRows(usable);
    design.y = draw.y;
    design.horizon = config.h;

    const LinkFunction link = fitting_link(config.error_link);
    const BinaryFarFit mle = fit(design, link);
    if (!mle.converged) {
      out.failed = true;
      return out;
    }

    out.beta_hat = mle.beta;
    const Eigen::MatrixXd h_mat = rotation_matrix(est, draw.f_true, draw.loadings_true);
    out.beta_rotated = rotate_coefficients(draw.beta_true, h_mat);
    out.auc = roc_auc(fitted_probabilities(mle, design), design.y).auc;
    out.ok = true;
  } catch (const Error&) {
    out.failed = true;
  }
  return out;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

StudyTables run_study(const std::vector<DgpConfig>& grid, int replications, bool use_ic) {
  if (replications < 1) throw std::invalid_argument("need at least one replication");

  StudyTables tables;
  tables.cells.reserve(grid.size());
  for (const DgpConfig& cell_config : grid) {
    std::vector<RepOutcome> outcomes(replications);
    par::parallel_for(replications, [&](std::int64_t r) {
      DgpConfig rep_config = cell_config;
      rep_config.seed = CounterRng(cell_config.seed, kStudyStreamBase + r).next_u64();
      outcomes[r] = run_replication(rep_config, use_ic);
    });

    StudyCell cell;
    cell.config = cell_config;
    cell.replications = replications;
    std::vector<Eigen::VectorXd> est, truth;
    for (const RepOutcome& o : outcomes) {
      if (use_ic) cell.d_selected.push_back(o.d_used);
      if (o.failed) cell.failures += 1;
      if (!o.ok) continue;
      est.push_back(o.beta_hat);
      truth.push_back(o.beta_rotated);
      cell.aucs.push_back(o.auc);
    }
    if (est.empty()) {
      throw NumericalFailure("every replication failed in cell n=" +
                             std::to_string(cell_config.n) +
                             " t=" + std::to_string(cell_config.t));
    }

    const Eigen::Index k = est.front().size();
    cell.estimates.resize(static_cast<Eigen::Index>(est.size()), k);
    cell.rotated_truth.resize(static_cast<Eigen::Index>(est.size()), k);
    for (std::size_t i = 0; i < est.size(); ++i) {
      cell.estimates.row(static_cast<Eigen::Index>(i)) = est[i];
      cell.rotated_truth.row(static_cast<Eigen::Index>(i)) = truth[i];
    }

    std::vector<std::string> names{"cons"};
    for (int j = 1; j <= 2; ++j) names.push_back("w" + std::to_string(j));
    for (int j = 1; j <= static_cast<int>(k) - 3; ++j) names.push_back("f" + std::to_string(j));
    cell.rmse = rmse(cell.estimates, cell.rotated_truth, names);

    const double count = static_cast<double>(cell.aucs.size());
    double mean = 0.0;
    for (double a : cell.aucs) mean += a;
    mean /= count;
    double var = 0.0;
    for (double a : cell.aucs) var += (a - mean) * (a - mean);
    cell.auc_mean = mean;
    cell.auc_median = median_of(cell.aucs);
    cell.auc_std = count > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;

    tables.cells.push_back(std::move(cell));
  }
  return tables;
}

}  // namespace binfar
