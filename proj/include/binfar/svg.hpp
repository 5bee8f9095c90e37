#pragma once

#include <string>
#include <vector>

#include "binfar/metrics.hpp"
#include "binfar/period.hpp"

namespace binfar::svg {

// ROC curves for one or more models on a unit square with the diagonal.
std::string roc_plot(const std::vector<std::pair<std::string, RocCurve>>& curves,
                     const std::string& title);

// Probability time series with shaded spans (recession months).
struct ShadedSeries {
  std::vector<Period> dates;
  std::vector<double> values;        // in [0,1]
  std::vector<int> shade;            // 0/1 per date
  std::string title;
};

std::string probability_plot(const ShadedSeries& series);

}  // namespace binfar::svg
