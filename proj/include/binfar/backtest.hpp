#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "binfar/data.hpp"
#include "binfar/glm.hpp"
#include "binfar/metrics.hpp"

namespace binfar {

enum class BacktestModel {
  BinaryFar,       // latent factors (plus observed regressors when supplied)
  ProbitObserved,  // observed regressors only
};

struct DPolicy {
  bool use_ic = true;
  int value = kDefaultDMax;  // fixed d, or d_max for IC selection

  static DPolicy fixed(int d) { return DPolicy{false, d}; }
  static DPolicy ic(int d_max = kDefaultDMax) { return DPolicy{true, d_max}; }
};

struct BacktestConfig {
  std::vector<int> horizons{1, 3, 6, 9, 12};
  Period oos_start;  // first out-of-sample target date
  BacktestModel model = BacktestModel::BinaryFar;
  DPolicy d_policy = DPolicy::ic();
  LinkFunction link = LinkFunction::probit();
  // Re-run IC selection at every expanding-window origin instead of fixing
  // d from the initial window.
  bool reselect_d_each_origin = false;
  int min_initial_months = 60;
};

struct ForecastRecord {
  Period target_date;
  int horizon = 0;
  double probability = 0.0;
  int realized = 0;
  Period estimation_end;
};

struct EvalReport {
  int horizon = 0;
  double auc = 0.0;
  std::optional<double> pseudo_r2;  // in-sample only
  RocCurve roc;
  std::vector<ForecastRecord> records;
  int d_used = 0;
  std::vector<std::string> errors;  // per-horizon/origin failures, non-fatal
  bool failed = false;
};

struct BacktestInputs {
  PanelMatrix panel;  // prepared (transformed, complete, standardized) panel
  TargetSpec target;  // recession indicator aligned to its own dates
  std::optional<Eigen::MatrixXd> observed;  // rows aligned with panel rows
};

// Full-sample fit and goodness of fit per horizon: AUC and the Estrella
// pseudo-R^2 against the intercept-only model at the same horizon.
std::vector<EvalReport> in_sample(const BacktestInputs& inputs, const BacktestConfig& config);

// Expanding-window forecasts: for every target date from oos_start on, refit
// using only data observable at the forecast origin (factors from panel rows
// dated at or before the origin, targets published by the origin), then
// forecast the origin+h outcome. Records come back in chronological order.
std::vector<EvalReport> out_of_sample(const BacktestInputs& inputs, const BacktestConfig& config);

}  // namespace binfar
