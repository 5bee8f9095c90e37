#include "binfar/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/kernels.hpp"

namespace binfar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (std::isspace(static_cast<unsigned char>(s[a])) || s[a] == '"')) ++a;
  while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) || s[b - 1] == '"')) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_missing(const std::string& field) {
  return field.empty() || field == "NA" || field == "NaN" || field == "nan" || field == ".";
}

double parse_cell(const std::string& field, int line_no, const std::string& what) {
  if (is_missing(field)) return kNaN;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw ParseError("non-numeric " + what + " '" + field + "' at line " +
                     std::to_string(line_no));
  }
  if (pos != field.size()) {
    throw ParseError("non-numeric " + what + " '" + field + "' at line " +
                     std::to_string(line_no));
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::pair<PanelMatrix, std::vector<SeriesSpec>> load_panel(const std::string& csv_path) {
  const std::vector<std::string> lines = read_lines(csv_path);
  if (lines.size() < 4) throw ParseError("panel file needs a header, a tcode row, and data rows");

  const std::vector<std::string> header = split_csv_line(lines[0]);
  if (header.size() < 3) throw ParseError("header at line 1 has fewer than two series columns");
  const std::size_t n = header.size() - 1;

  const std::vector<std::string> tcode_row = split_csv_line(lines[1]);
  if (tcode_row.size() != header.size()) {
    throw ParseError("tcode row at line 2 has " + std::to_string(tcode_row.size()) +
                     " fields, header has " + std::to_string(header.size()));
  }
  std::vector<SeriesSpec> specs(n);
  for (std::size_t j = 0; j < n; ++j) {
    specs[j].series_id = header[j + 1];
    const double code = parse_cell(tcode_row[j + 1], 2, "transform code");
    if (!(code >= 1.0 && code <= 7.0) || code != std::floor(code)) {
      throw ParseError("transform code '" + tcode_row[j + 1] + "' out of range 1..7 at line 2");
    }
    specs[j].tcode = static_cast<int>(code);
  }

  const std::size_t t = lines.size() - 2;
  PanelMatrix panel;
  panel.values.resize(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(n));
  panel.time_index.reserve(t);
  for (std::size_t j = 0; j < n; ++j) panel.series_ids.push_back(specs[j].series_id);

  for (std::size_t r = 0; r < t; ++r) {
    const int line_no = static_cast<int>(r) + 3;
    const std::vector<std::string> row = split_csv_line(lines[r + 2]);
    if (row.size() != header.size()) {
      throw ParseError("row at line " + std::to_string(line_no) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    Period p;
    try {
      p = parse_period(row[0]);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at line " + std::to_string(line_no));
    }
    if (!panel.time_index.empty() && months_between(panel.time_index.back(), p) != 1) {
      throw ParseError("dates are not consecutive months at line " + std::to_string(line_no));
    }
    panel.time_index.push_back(p);
    for (std::size_t j = 0; j < n; ++j) {
      panel.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          parse_cell(row[j + 1], line_no, "cell");
    }
  }
  return {std::move(panel), std::move(specs)};
}

std::vector<double> apply_tcode(const std::vector<double>& series, int tcode) {
  if (tcode < 1 || tcode > 7) throw std::invalid_argument("transform code must be in 1..7");
  const std::size_t n = series.size();
  std::vector<double> logs;
  const bool needs_log = tcode >= 4 && tcode <= 6;
  if (needs_log) {
    logs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(series[i])) {
        logs[i] = kNaN;
      } else if (series[i] <= 0.0) {
        throw TransformError("log transform needs positive values; found " +
                             std::to_string(series[i]) + " at index " + std::to_string(i));
      } else {
        logs[i] = std::log(series[i]);
      }
    }
  }
  const std::vector<double>& base = needs_log ? logs : series;

  std::vector<double> out(n, kNaN);
  auto diff1 = [&](const std::vector<double>& src, std::vector<double>& dst) {
    for (std::size_t i = 1; i < n; ++i) dst[i] = src[i] - src[i - 1];
    if (n > 0) dst[0] = kNaN;
  };
  switch (tcode) {
    case 1:
    case 4:
      out = base;
      break;
    case 2:
    case 5:
      diff1(base, out);
      break;
    case 3:
    case 6: {
      std::vector<double> d1(n, kNaN);
      diff1(base, d1);
      for (std::size_t i = 2; i < n; ++i) out[i] = d1[i] - d1[i - 1];
      break;
    }
    case 7: {
      std::vector<double> rate(n, kNaN);
      for (std::size_t i = 1; i < n; ++i) {
        if (series[i - 1] == 0.0) {
          throw TransformError("growth-rate transform divides by zero at index " +
                               std::to_string(i - 1));
        }
        rate[i] = series[i] / series[i - 1] - 1.0;
      }
      for (std::size_t i = 2; i < n; ++i) out[i] = rate[i] - rate[i - 1];
      break;
    }
    default:
      break;
  }
  return out;
}

PreparedPanel prepare_factor_panel(const PanelMatrix& raw, const std::vector<SeriesSpec>& specs,
                                   bool standardize) {
  if (static_cast<Eigen::Index>(specs.size()) != raw.n()) {
    throw std::invalid_argument("one SeriesSpec per panel column required");
  }
  const Eigen::Index t = raw.t();
  const Eigen::Index n = raw.n();
  Eigen::MatrixXd transformed(t, n);
  int max_lead = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<double> col(raw.values.col(j).data(), raw.values.col(j).data() + t);
    std::vector<double> res;
    try {
      res = apply_tcode(col, specs[static_cast<std::size_t>(j)].tcode);
    } catch (const TransformError& e) {
      throw TransformError(std::string(e.what()) + " in series " +
                           specs[static_cast<std::size_t>(j)].series_id);
    }
    const int lead = specs[static_cast<std::size_t>(j)].tcode == 1 ||
                             specs[static_cast<std::size_t>(j)].tcode == 4
                         ? 0
                         : (specs[static_cast<std::size_t>(j)].tcode == 2 ||
                                    specs[static_cast<std::size_t>(j)].tcode == 5
                                ? 1
                                : 2);
    max_lead = std::max(max_lead, lead);
    for (Eigen::Index i = 0; i < t; ++i) transformed(i, j) = res[static_cast<std::size_t>(i)];
  }

  PreparedPanel out;
  for (Eigen::Index i = max_lead; i < t; ++i) {
    if (transformed.row(i).allFinite()) out.source_rows.push_back(static_cast<int>(i));
  }
  if (out.source_rows.size() < 2) {
    throw InsufficientDataError("fewer than two complete rows after transforms");
  }

  out.panel.values.resize(static_cast<Eigen::Index>(out.source_rows.size()), n);
  for (std::size_t i = 0; i < out.source_rows.size(); ++i) {
    out.panel.values.row(static_cast<Eigen::Index>(i)) = transformed.row(out.source_rows[i]);
    if (!raw.time_index.empty()) {
      out.panel.time_index.push_back(raw.time_index[static_cast<std::size_t>(out.source_rows[i])]);
    }
  }
  out.panel.series_ids = raw.series_ids;
  if (standardize) {
    out.panel.values = kernels::standardize_columns(out.panel.values);
  }
  return out;
}

AssembledDesign assemble_design(const PanelMatrix& panel, const TargetSpec& target,
                                const Period& estimation_end,
                                const Eigen::MatrixXd* observed_regressors) {
  if (target.horizon < 1) throw std::invalid_argument("forecast horizon must be >= 1");
  if (target.publication_lag_months < 0) throw std::invalid_argument("publication lag < 0");
  if (target.recession.size() != target.dates.size()) {
    throw std::invalid_argument("target indicator and dates differ in length");
  }
  if (panel.time_index.empty()) throw std::invalid_argument("panel needs a time index");
  if (observed_regressors && observed_regressors->rows() != panel.t()) {
    throw std::invalid_argument("observed regressors must align with panel rows");
  }
  const auto end_it =
      std::find(panel.time_index.begin(), panel.time_index.end(), estimation_end);
  if (end_it == panel.time_index.end()) {
    throw std::invalid_argument("estimation_end " + to_string(estimation_end) +
                                " not in the panel index");
  }

  const int h = target.horizon;
  const Period last_usable_target = add_months(estimation_end, -target.publication_lag_months);

  std::vector<int> rows;
  std::vector<double> y;
  std::vector<Period> target_dates;
  for (Eigen::Index i = 0; i < panel.t(); ++i) {
    const Period reg_date = panel.time_index[static_cast<std::size_t>(i)];
    const Period target_date = add_months(reg_date, h);
    if (target_date > last_usable_target) break;
    const auto t_it = std::find(target.dates.begin(), target.dates.end(), target_date);
    if (t_it == target.dates.end()) continue;
    if (!panel.values.row(i).allFinite()) continue;
    if (observed_regressors && !observed_regressors->row(i).allFinite()) continue;
    rows.push_back(static_cast<int>(i));
    y.push_back(static_cast<double>(
        target.recession[static_cast<std::size_t>(t_it - target.dates.begin())]));
    target_dates.push_back(target_date);
  }
  if (rows.empty()) {
    throw InsufficientDataError("no usable (regressor, target) pairs before " +
                                to_string(estimation_end));
  }

  AssembledDesign out;
  out.design.horizon = h;
  out.design.y = Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  if (observed_regressors) {
    out.design.w.resize(static_cast<Eigen::Index>(rows.size()), observed_regressors->cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.design.w.row(static_cast<Eigen::Index>(i)) = observed_regressors->row(rows[i]);
    }
  }
  out.panel_rows = rows;
  out.target_dates = std::move(target_dates);
  for (int r : rows) out.regressor_dates.push_back(panel.time_index[static_cast<std::size_t>(r)]);
  return out;
}

std::vector<int> recession_from_ranges(const std::vector<Period>& dates,
                                       const std::vector<std::pair<Period, Period>>& peak_trough) {
  std::vector<int> out(dates.size(), 0);
  for (const auto& [peak, trough] : peak_trough) {
    const Period first = add_months(peak, 1);
    for (std::size_t i = 0; i < dates.size(); ++i) {
      if (dates[i] >= first && dates[i] <= trough) out[i] = 1;
    }
  }
  return out;
}

std::vector<int> load_recessions(const std::string& csv_path, const std::vector<Period>& dates) {
  const std::vector<std::string> lines = read_lines(csv_path);
  if (lines.empty()) throw ParseError("empty recession file '" + csv_path + "'");

  // Optional header: skipped when its first field is not a date. The file is
  // a range file when the second field of the first data line parses as a
  // date, otherwise a (date, 0/1) flag file.
  std::size_t first_data = 0;
  {
    const std::vector<std::string> fields = split_csv_line(lines[0]);
    if (fields.size() < 2) throw ParseError("recession row at line 1 needs two fields");
    try {
      parse_period(fields[0]);
    } catch (const ParseError&) {
      first_data = 1;
    }
  }
  if (first_data >= lines.size()) throw ParseError("recession file has no data rows");
  bool is_range_file = false;
  {
    const std::vector<std::string> fields = split_csv_line(lines[first_data]);
    if (fields.size() >= 2) {
      try {
        parse_period(fields[1]);
        is_range_file = true;
      } catch (const ParseError&) {
        is_range_file = false;
      }
    }
  }

  std::vector<std::pair<Period, Period>> ranges;
  std::vector<std::pair<Period, int>> flags;
  for (std::size_t i = first_data; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i]);
    if (fields.size() < 2) {
      throw ParseError("recession row at line " + std::to_string(i + 1) + " needs two fields");
    }
    const Period first = parse_period(fields[0]);
    if (is_range_file) {
      ranges.emplace_back(first, parse_period(fields[1]));
    } else {
      const double v = parse_cell(fields[1], static_cast<int>(i + 1), "recession flag");
      if (v != 0.0 && v != 1.0) {
        throw ParseError("recession flag must be 0 or 1 at line " + std::to_string(i + 1));
      }
      flags.emplace_back(first, static_cast<int>(v));
    }
  }

  if (is_range_file) return recession_from_ranges(dates, ranges);

  std::vector<int> out(dates.size(), 0);
  for (std::size_t i = 0; i < dates.size(); ++i) {
    const auto it = std::find_if(flags.begin(), flags.end(),
                                 [&](const auto& f) { return f.first == dates[i]; });
    if (it == flags.end()) {
      throw ParseError("recession file does not cover " + to_string(dates[i]));
    }
    out[i] = it->second;
  }
  return out;
}

}  // namespace binfar
