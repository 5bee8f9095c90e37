#include "binfar/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/parallel.hpp"

namespace binfar {

namespace {

int resolve_d(const PanelMatrix& panel, const DPolicy& policy) {
  if (!policy.use_ic) return policy.value;
  const int d_max =
      std::min<int>(policy.value, static_cast<int>(std::min(panel.t(), panel.n())) - 1);
  return select_num_factors(panel, d_max).d_hat;
}

// Truncated view of the panel (and observed block) up to and including `end`.
struct Window {
  PanelMatrix panel;
  std::optional<Eigen::MatrixXd> observed;
};

Window window_until(const BacktestInputs& inputs, const Period& end) {
  Eigen::Index rows = 0;
  while (rows < inputs.panel.t() &&
         inputs.panel.time_index[static_cast<std::size_t>(rows)] <= end) {
    ++rows;
  }
  Window w;
  w.panel.values = inputs.panel.values.topRows(rows);
  w.panel.series_ids = inputs.panel.series_ids;
  w.panel.time_index.assign(inputs.panel.time_index.begin(),
                            inputs.panel.time_index.begin() + rows);
  if (inputs.observed) w.observed = inputs.observed->topRows(rows);
  return w;
}

// Builds the design for one estimation window and attaches the factor block.
struct WindowFit {
  BinaryFarFit fit;
  AssembledDesign assembled;
  FactorEstimate factors;  // d = 0 leaves this empty
  int d = 0;
};

WindowFit fit_window(const Window& w, const TargetSpec& target, const Period& estimation_end,
                     int horizon, const BacktestConfig& config, int d) {
  TargetSpec spec = target;
  spec.horizon = horizon;
  if (config.model == BacktestModel::ProbitObserved && !w.observed) {
    throw std::invalid_argument("probit_observed needs observed regressors");
  }
  const Eigen::MatrixXd* observed = w.observed ? &*w.observed : nullptr;

  WindowFit out;
  out.assembled = assemble_design(w.panel, spec, estimation_end, observed);
  out.d = config.model == BacktestModel::BinaryFar ? d : 0;
  if (out.d > 0) {
    out.factors = estimate_factors(w.panel, out.d);
    out.assembled.design.f.resize(static_cast<Eigen::Index>(out.assembled.panel_rows.size()),
                                  out.d);
    for (std::size_t i = 0; i < out.assembled.panel_rows.size(); ++i) {
      out.assembled.design.f.row(static_cast<Eigen::Index>(i)) =
          out.factors.factors.row(out.assembled.panel_rows[i]);
    }
  }
  out.fit = fit(out.assembled.design, config.link);
  return out;
}

}  // namespace

std::vector<EvalReport> in_sample(const BacktestInputs& inputs, const BacktestConfig& config) {
  if (inputs.panel.time_index.empty()) throw std::invalid_argument("panel needs a time index");
  const Period end = inputs.panel.time_index.back();
  const int d = config.model == BacktestModel::BinaryFar ? resolve_d(inputs.panel, config.d_policy) : 0;
  const Window full = window_until(inputs, end);

  std::vector<EvalReport> reports;
  for (int h : config.horizons) {
    EvalReport report;
    report.horizon = h;
    report.d_used = d;
    try {
      const WindowFit wf = fit_window(full, inputs.target, end, h, config, d);
      const Eigen::VectorXd probs = fitted_probabilities(wf.fit, wf.assembled.design);
      report.roc = roc_auc(probs, wf.assembled.design.y);
      report.auc = report.roc.auc;
      report.pseudo_r2 = pseudo_r2(wf.fit.loglik, intercept_only_loglik(wf.assembled.design.y),
                                   static_cast<int>(wf.assembled.design.rows()));
      for (Eigen::Index i = 0; i < probs.size(); ++i) {
        report.records.push_back(
            ForecastRecord{wf.assembled.target_dates[static_cast<std::size_t>(i)], h, probs(i),
                           wf.assembled.design.y(i) > 0.5 ? 1 : 0, end});
      }
    } catch (const std::exception& e) {
      report.failed = true;
      report.errors.emplace_back(e.what());
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<EvalReport> out_of_sample(const BacktestInputs& inputs, const BacktestConfig& config) {
  if (inputs.panel.time_index.empty()) throw std::invalid_argument("panel needs a time index");
  const Period sample_start = inputs.panel.time_index.front();
  const Period sample_end = inputs.panel.time_index.back();
  const int max_h = *std::max_element(config.horizons.begin(), config.horizons.end());
  const Period first_origin = add_months(config.oos_start, -max_h);
  if (months_between(sample_start, first_origin) < config.min_initial_months) {
    throw std::invalid_argument("initial estimation window shorter than " +
                                std::to_string(config.min_initial_months) + " months");
  }
  if (config.oos_start > sample_end) {
    throw std::invalid_argument("oos_start lies beyond the sample");
  }

  // d from the initial window, optionally re-selected per origin.
  int d_initial = 0;
  if (config.model == BacktestModel::BinaryFar) {
    const Window initial = window_until(inputs, first_origin);
    d_initial = resolve_d(initial.panel, config.d_policy);
  }

  // Realized outcomes for scoring come from the full target series.
  const auto realized_at = [&](const Period& date) -> std::optional<int> {
    const auto it = std::find(inputs.target.dates.begin(), inputs.target.dates.end(), date);
    if (it == inputs.target.dates.end()) return std::nullopt;
    return inputs.target.recession[static_cast<std::size_t>(it - inputs.target.dates.begin())];
  };

  std::vector<EvalReport> reports;
  for (int h : config.horizons) {
    EvalReport report;
    report.horizon = h;
    report.d_used = d_initial;

    std::vector<Period> targets;
    for (Period td = config.oos_start; td <= sample_end; td = add_months(td, 1)) {
      if (realized_at(td) && months_between(sample_start, add_months(td, -h)) >= 0) {
        targets.push_back(td);
      }
    }

    std::vector<std::optional<ForecastRecord>> slots(targets.size());
    std::vector<std::string> errors(targets.size());
    par::parallel_for(static_cast<std::int64_t>(targets.size()), [&](std::int64_t i) {
      const Period target_date = targets[static_cast<std::size_t>(i)];
      const Period origin = add_months(target_date, -h);
      try {
        const Window w = window_until(inputs, origin);
        int d = d_initial;
        if (config.model == BacktestModel::BinaryFar && config.reselect_d_each_origin) {
          d = resolve_d(w.panel, config.d_policy);
        }
        const WindowFit wf = fit_window(w, inputs.target, origin, h, config, d);

        // Regressors at the origin itself (the last window row).
        const Eigen::Index origin_row = w.panel.t() - 1;
        if (w.panel.time_index[static_cast<std::size_t>(origin_row)] != origin) {
          throw InsufficientDataError("panel does not reach the forecast origin " +
                                      to_string(origin));
        }
        Eigen::VectorXd w_new(wf.assembled.design.p());
        if (w_new.size() > 0) w_new = w.observed->row(origin_row);
        Eigen::VectorXd f_new(wf.d);
        if (wf.d > 0) f_new = wf.factors.factors.row(origin_row);

        const double prob = predict_proba(wf.fit, w_new, f_new);
        slots[static_cast<std::size_t>(i)] =
            ForecastRecord{target_date, h, prob, *realized_at(target_date), origin};
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(i)] = to_string(origin) + ": " + e.what();
      }
    });

    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i]) {
        report.records.push_back(*slots[i]);
      } else if (!errors[i].empty()) {
        report.errors.push_back(errors[i]);
      }
    }
    if (report.records.size() >= 2) {
      Eigen::VectorXd probs(static_cast<Eigen::Index>(report.records.size()));
      Eigen::VectorXd outcomes(probs.size());
      for (Eigen::Index i = 0; i < probs.size(); ++i) {
        probs(i) = report.records[static_cast<std::size_t>(i)].probability;
        outcomes(i) = report.records[static_cast<std::size_t>(i)].realized;
      }
      try {
        report.roc = roc_auc(probs, outcomes);
        report.auc = report.roc.auc;
      } catch (const DegenerateLabelsError& e) {
        report.failed = true;
        report.errors.emplace_back(e.what());
      }
    } else {
      report.failed = true;
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace binfar
