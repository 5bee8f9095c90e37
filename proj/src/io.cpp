#include "binfar/io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "binfar/errors.hpp"
#include "binfar/version.hpp"

namespace binfar::io {

using nlohmann::json;

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return {};
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const FactorEstimate& est) {
  json j;
  j["d"] = est.d;
  j["factors"] = matrix_to_json(est.factors);
  j["loadings"] = matrix_to_json(est.loadings);
  j["eigenvalues"] = vector_to_json(est.eigenvalues);
  j["degenerate_spectrum"] = est.degenerate_spectrum;
  if (est.rotation) j["rotation"] = matrix_to_json(*est.rotation);
  return j;
}

FactorEstimate factor_estimate_from_json(const json& j) {
  FactorEstimate est;
  est.d = j.at("d").get<int>();
  est.factors = matrix_from_json(j.at("factors"));
  est.loadings = matrix_from_json(j.at("loadings"));
  const json& ev = j.at("eigenvalues");
  est.eigenvalues.resize(static_cast<Eigen::Index>(ev.size()));
  for (std::size_t i = 0; i < ev.size(); ++i) est.eigenvalues(static_cast<Eigen::Index>(i)) = ev[i].get<double>();
  est.degenerate_spectrum = j.value("degenerate_spectrum", false);
  if (j.contains("rotation")) est.rotation = matrix_from_json(j.at("rotation"));
  return est;
}

json to_json(const BinaryFarFit& fit) {
  json j;
  j["beta"] = vector_to_json(fit.beta);
  j["loglik"] = fit.loglik;
  j["iterations"] = fit.iterations;
  j["gradient_norm"] = fit.gradient_norm;
  j["converged"] = fit.converged;
  j["link"] = fit.link.name();
  return j;
}

json to_json(const BootstrapResult& result) {
  json j;
  j["draws"] = matrix_to_json(result.draws);
  j["standard_errors"] = vector_to_json(result.standard_errors);
  j["ci_lower"] = vector_to_json(result.ci_lower);
  j["ci_upper"] = vector_to_json(result.ci_upper);
  j["failed_draws"] = result.failed_draws;
  j["level"] = result.level;
  return j;
}

json to_json(const RocCurve& curve) {
  json j;
  j["thresholds"] = vector_to_json(curve.thresholds);
  j["tp_rate"] = vector_to_json(curve.tp_rate);
  j["fp_rate"] = vector_to_json(curve.fp_rate);
  j["auc"] = curve.auc;
  return j;
}

json to_json(const RmseReport& report) {
  json j;
  j["rmse_all"] = report.rmse_all;
  json per = json::object();
  for (const auto& [name, value] : report.per_coefficient) per[name] = value;
  j["per_coefficient"] = per;
  return j;
}

json to_json(const EvalReport& report) {
  json j;
  j["horizon"] = report.horizon;
  j["auc"] = report.auc;
  if (report.pseudo_r2) j["pseudo_r2"] = *report.pseudo_r2;
  j["d_used"] = report.d_used;
  j["failed"] = report.failed;
  j["errors"] = report.errors;
  j["n_records"] = report.records.size();
  return j;
}

std::string roc_to_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "threshold,fp_rate,tp_rate\n";
  for (Eigen::Index i = 0; i < curve.thresholds.size(); ++i) {
    out << format_double(curve.thresholds(i)) << ',' << format_double(curve.fp_rate(i)) << ','
        << format_double(curve.tp_rate(i)) << '\n';
  }
  return out.str();
}

std::string rmse_to_csv(const RmseReport& report) {
  std::ostringstream out;
  out << "coefficient,rmse\nall," << format_double(report.rmse_all) << '\n';
  for (const auto& [name, value] : report.per_coefficient) {
    out << name << ',' << format_double(value) << '\n';
  }
  return out.str();
}

std::string bootstrap_to_csv(const BootstrapResult& result) {
  std::ostringstream out;
  out << "draw";
  for (Eigen::Index j = 0; j < result.draws.cols(); ++j) out << ",b" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < result.draws.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < result.draws.cols(); ++j) {
      out << ',' << format_double(result.draws(i, j));
    }
    out << '\n';
  }
  out << "se";
  for (Eigen::Index j = 0; j < result.standard_errors.size(); ++j) {
    out << ',' << format_double(result.standard_errors(j));
  }
  out << "\nci_lower";
  for (Eigen::Index j = 0; j < result.ci_lower.size(); ++j) {
    out << ',' << format_double(result.ci_lower(j));
  }
  out << "\nci_upper";
  for (Eigen::Index j = 0; j < result.ci_upper.size(); ++j) {
    out << ',' << format_double(result.ci_upper(j));
  }
  out << '\n';
  return out.str();
}

std::string records_to_csv(const std::vector<ForecastRecord>& records) {
  std::ostringstream out;
  out << "target_date,horizon,probability,realized,estimation_end\n";
  for (const ForecastRecord& r : records) {
    out << to_string(r.target_date) << ',' << r.horizon << ',' << format_double(r.probability)
        << ',' << r.realized << ',' << to_string(r.estimation_end) << '\n';
  }
  return out.str();
}

namespace {

// "rows N, columns T" blocks like the simulation tables.
template <typename Pick>
void append_block(std::ostringstream& out, const StudyTables& tables, const std::string& title,
                  Pick pick) {
  std::vector<int> ns, ts;
  for (const StudyCell& c : tables.cells) {
    if (std::find(ns.begin(), ns.end(), c.config.n) == ns.end()) ns.push_back(c.config.n);
    if (std::find(ts.begin(), ts.end(), c.config.t) == ts.end()) ts.push_back(c.config.t);
  }
  out << title;
  for (int t : ts) out << ",T=" << t;
  out << '\n';
  for (int n : ns) {
    out << "N=" << n;
    for (int t : ts) {
      const auto it = std::find_if(tables.cells.begin(), tables.cells.end(), [&](const StudyCell& c) {
        return c.config.n == n && c.config.t == t;
      });
      out << ',';
      if (it != tables.cells.end()) out << format_double(pick(*it));
    }
    out << '\n';
  }
}

}  // namespace

std::string study_rmse_csv(const StudyTables& tables) {
  std::ostringstream out;
  append_block(out, tables, "rmse_all", [](const StudyCell& c) { return c.rmse.rmse_all; });
  if (tables.cells.empty()) return out.str();
  // Per-coefficient blocks in the table order: cons, f..., w...
  std::vector<std::string> order{"cons"};
  const auto& per = tables.cells.front().rmse.per_coefficient;
  for (const auto& [name, value] : per) {
    (void)value;
    if (name[0] == 'f') order.push_back(name);
  }
  for (const auto& [name, value] : per) {
    (void)value;
    if (name[0] == 'w') order.push_back(name);
  }
  for (const std::string& coef : order) {
    out << '\n';
    append_block(out, tables, "rmse_" + coef, [&coef](const StudyCell& c) {
      for (const auto& [name, value] : c.rmse.per_coefficient) {
        if (name == coef) return value;
      }
      return 0.0;
    });
  }
  return out.str();
}

std::string study_auc_csv(const StudyTables& tables) {
  std::ostringstream out;
  append_block(out, tables, "auc_mean", [](const StudyCell& c) { return c.auc_mean; });
  out << '\n';
  append_block(out, tables, "auc_median", [](const StudyCell& c) { return c.auc_median; });
  out << '\n';
  append_block(out, tables, "auc_std", [](const StudyCell& c) { return c.auc_std; });
  return out.str();
}

json study_manifest(const StudyTables& tables) {
  json cells = json::array();
  for (const StudyCell& c : tables.cells) {
    json jc;
    jc["n"] = c.config.n;
    jc["t"] = c.config.t;
    jc["rho_eps"] = c.config.rho_eps;
    jc["link"] = c.config.error_link == ErrorLink::Normal ? "normal" : "logistic";
    jc["seed"] = c.config.seed;
    jc["replications"] = c.replications;
    jc["failures"] = c.failures;
    jc["rmse"] = to_json(c.rmse);
    jc["auc_mean"] = c.auc_mean;
    jc["auc_median"] = c.auc_median;
    jc["auc_std"] = c.auc_std;
    if (!c.d_selected.empty()) jc["d_selected"] = c.d_selected;
    cells.push_back(std::move(jc));
  }
  json j;
  j["cells"] = std::move(cells);
  return j;
}

std::string panel_to_csv(const PanelMatrix& panel) {
  std::ostringstream out;
  out << "date";
  for (Eigen::Index j = 0; j < panel.n(); ++j) {
    out << ',' << (panel.series_ids.empty() ? "s" + std::to_string(j) : panel.series_ids[static_cast<std::size_t>(j)]);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < panel.t(); ++i) {
    out << (panel.time_index.empty() ? std::to_string(i)
                                     : to_string(panel.time_index[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < panel.n(); ++j) out << ',' << format_double(panel.values(i, j));
    out << '\n';
  }
  return out.str();
}

json panel_meta_json(const PanelMatrix& panel, const std::vector<SeriesSpec>& specs) {
  json series = json::array();
  for (const SeriesSpec& s : specs) {
    series.push_back({{"id", s.series_id}, {"tcode", s.tcode}});
  }
  json j;
  j["t"] = panel.t();
  j["n"] = panel.n();
  j["series"] = std::move(series);
  if (!panel.time_index.empty()) {
    j["start"] = to_string(panel.time_index.front());
    j["end"] = to_string(panel.time_index.back());
  }
  return j;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::string& path) { return fnv1a_hex(read_file(path)); }

json to_json(const RunManifest& manifest) {
  json j;
  j["command_line"] = manifest.command_line;
  j["seeds"] = manifest.seeds;
  json digests = json::object();
  for (const auto& [path, digest] : manifest.input_digests) digests[path] = digest;
  j["input_digests"] = digests;
  j["version"] = manifest.version.empty() ? kVersion : manifest.version;
  j["wall_seconds"] = manifest.wall_seconds;
  return j;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace binfar::io
