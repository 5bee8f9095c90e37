#include "binfar/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/parallel.hpp"
#include "binfar/rng.hpp"

namespace binfar {

BootstrapSpec resolve_bootstrap_spec(BootstrapSpec spec, Eigen::Index usable_rows) {
  const int n = static_cast<int>(usable_rows);
  if (n < 1) throw std::invalid_argument("empty sample");
  if (spec.replications < 1) throw std::invalid_argument("need at least one replication");
  if (spec.num_blocks > 0 && spec.block_length == 0) {
    spec.block_length = n / spec.num_blocks;
  } else if (spec.block_length > 0 && spec.num_blocks == 0) {
    spec.num_blocks = n / spec.block_length;
  } else if (spec.num_blocks == 0 && spec.block_length == 0) {
    spec.block_length = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    spec.num_blocks = n / spec.block_length;
  }
  if (spec.block_length < 1 || spec.num_blocks < 1 || spec.block_length > n) {
    throw std::invalid_argument("block length and count must be positive and fit the sample");
  }
  if (spec.block_length * spec.num_blocks > n) {
    throw std::invalid_argument("q*L exceeds the usable sample");
  }
  return spec;
}

std::vector<int> mbb_block_starts(const BootstrapSpec& spec, int replication) {
  const int q = spec.block_length;
  const int l = spec.num_blocks;
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(replication));
  std::vector<int> starts(l);
  // Starts are uniform on {0, ..., n_eff - q} with n_eff = q*L.
  const std::uint64_t bound = static_cast<std::uint64_t>(q * (l - 1) + 1);
  for (int i = 0; i < l; ++i) starts[i] = static_cast<int>(rng.uniform_int(bound));
  return starts;
}

std::vector<int> mbb_row_indices(const BootstrapSpec& spec, int replication) {
  const std::vector<int> starts = mbb_block_starts(spec, replication);
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(spec.block_length) * starts.size());
  for (int s : starts) {
    for (int m = 0; m < spec.block_length; ++m) rows.push_back(s + m);
  }
  return rows;
}

namespace {

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t idx = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(idx);
  if (idx + 1 < v.size()) return v[idx] * (1.0 - frac) + v[idx + 1] * frac;
  return v[idx];
}

}  // namespace

BootstrapResult moving_block_bootstrap(const Design& design, const PanelMatrix& panel, int d,
                                       const LinkFunction& link, const BootstrapSpec& raw_spec,
                                       double level) {
  const Eigen::Index usable = design.rows();
  if (panel.t() < usable) {
    throw std::invalid_argument("panel is shorter than the design sample");
  }
  if (level <= 0.0 || level >= 1.0) throw std::invalid_argument("level must be in (0,1)");
  if (d < 1) throw std::invalid_argument("need at least one factor for the two-step refit");

  const BootstrapSpec spec = resolve_bootstrap_spec(raw_spec, usable);
  const int q = spec.block_length;
  const int l = spec.num_blocks;
  const int n_eff = q * l;  // most recent usable-n_eff observations are trimmed
  const int b = spec.replications;
  const Eigen::Index k = design.k();

  Eigen::MatrixXd all_draws(b, k);
  std::vector<char> ok(b, 0);

  par::parallel_for(b, [&](std::int64_t rep) {
    const std::vector<int> rows = mbb_row_indices(spec, static_cast<int>(rep));

    Design boot;
    boot.horizon = design.horizon;
    boot.y.resize(n_eff);
    if (design.p() > 0) boot.w.resize(n_eff, design.p());
    Eigen::MatrixXd boot_panel(n_eff, panel.n());
    for (int i = 0; i < n_eff; ++i) {
      const int src = rows[static_cast<std::size_t>(i)];
      boot.y(i) = design.y(src);
      if (design.p() > 0) boot.w.row(i) = design.w.row(src);
      boot_panel.row(i) = panel.values.row(src);
    }

    try {
      const FactorEstimate est = estimate_factors(boot_panel, d);
      boot.f = est.factors;
      const BinaryFarFit refit = fit(boot, link);
      if (!refit.converged) return;
      all_draws.row(rep) = refit.beta;
      ok[static_cast<std::size_t>(rep)] = 1;
    } catch (const Error&) {
      // counted below as a failed draw
    } catch (const std::invalid_argument&) {
    }
  });

  BootstrapResult result;
  result.level = level;
  std::vector<Eigen::Index> kept;
  for (int rep = 0; rep < b; ++rep) {
    if (ok[static_cast<std::size_t>(rep)]) {
      kept.push_back(rep);
    } else {
      result.failed_draws += 1;
    }
  }
  if (kept.empty()) {
    throw BootstrapFailureError("all " + std::to_string(b) + " bootstrap refits failed");
  }

  result.draws.resize(static_cast<Eigen::Index>(kept.size()), k);
  for (std::size_t i = 0; i < kept.size(); ++i) result.draws.row(i) = all_draws.row(kept[i]);

  const double m = static_cast<double>(kept.size());
  result.standard_errors.resize(k);
  result.ci_lower.resize(k);
  result.ci_upper.resize(k);
  const double lo_p = (1.0 - level) / 2.0;
  const double hi_p = 1.0 - lo_p;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double mean = result.draws.col(j).mean();
    const double ss = (result.draws.col(j).array() - mean).square().sum();
    result.standard_errors(j) = m > 1.0 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    std::vector<double> col(result.draws.col(j).data(), result.draws.col(j).data() + result.draws.rows());
    result.ci_lower(j) = percentile(col, lo_p);
    result.ci_upper(j) = percentile(std::move(col), hi_p);
  }
  return result;
}

}  // namespace binfar
