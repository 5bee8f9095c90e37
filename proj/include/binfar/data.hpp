#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binfar/factors.hpp"
#include "binfar/glm.hpp"
#include "binfar/period.hpp"

namespace binfar {

struct SeriesSpec {
  std::string series_id;
  int tcode = 1;  // 1..7, FRED-MD stationarity transform codes
};

struct TargetSpec {
  std::vector<int> recession;  // 0/1 per time_index entry
  std::vector<Period> dates;
  int publication_lag_months = 3;
  int horizon = 1;
};

// Parses a FRED-MD-convention CSV: header row of series ids, a row of integer
// transform codes, then monthly rows with the date in the first column.
// Missing cells stay missing (NaN); no transform is applied here.
std::pair<PanelMatrix, std::vector<SeriesSpec>> load_panel(const std::string& csv_path);

// Stationarity transform of one series. Codes: 1 level, 2 delta, 3 delta^2,
// 4 log, 5 delta log, 6 delta^2 log, 7 delta of the gross growth rate minus
// one. Leading values lost to differencing come back as NaN.
std::vector<double> apply_tcode(const std::vector<double>& series, int tcode);

struct PreparedPanel {
  PanelMatrix panel;
  std::vector<int> source_rows;  // row of the raw panel each kept row came from
};

// Transforms every series by its tcode, drops the common leading rows lost to
// differencing, drops any remaining incomplete rows (complete-case), and
// optionally standardizes each series to mean 0, unit variance.
PreparedPanel prepare_factor_panel(const PanelMatrix& raw, const std::vector<SeriesSpec>& specs,
                                   bool standardize = true);

struct AssembledDesign {
  Design design;                       // w filled when observed regressors given; f left empty
  std::vector<Period> regressor_dates; // date of each design row's regressors
  std::vector<int> panel_rows;         // panel row of each design row
  std::vector<Period> target_dates;
};

// Pairs regressors dated t with the outcome y_{t+h}, keeping only pairs whose
// target classification is old enough to be published at estimation_end
// (target date <= estimation_end - publication lag). Rows with missing
// regressors or target are dropped without reordering.
AssembledDesign assemble_design(const PanelMatrix& panel, const TargetSpec& target,
                                const Period& estimation_end,
                                const Eigen::MatrixXd* observed_regressors = nullptr);

// Recession indicator from NBER-style peak/trough ranges: the month after
// each peak through the trough month is marked 1.
std::vector<int> recession_from_ranges(const std::vector<Period>& dates,
                                       const std::vector<std::pair<Period, Period>>& peak_trough);

// Loads either a (date, 0/1) CSV or a (peak, trough) range CSV, detected from
// the values, and aligns it to `dates`.
std::vector<int> load_recessions(const std::string& csv_path, const std::vector<Period>& dates);

}  // namespace binfar
