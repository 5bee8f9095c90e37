#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "binfar/backtest.hpp"
#include "binfar/factors.hpp"
#include "binfar/glm.hpp"
#include "binfar/inference.hpp"
#include "binfar/metrics.hpp"
#include "binfar/simulate.hpp"

namespace binfar::io {

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

nlohmann::json to_json(const FactorEstimate& est);
FactorEstimate factor_estimate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BinaryFarFit& fit);
nlohmann::json to_json(const BootstrapResult& result);
nlohmann::json to_json(const RocCurve& curve);
nlohmann::json to_json(const RmseReport& report);
nlohmann::json to_json(const EvalReport& report);

std::string roc_to_csv(const RocCurve& curve);
std::string rmse_to_csv(const RmseReport& report);
std::string bootstrap_to_csv(const BootstrapResult& result);
std::string records_to_csv(const std::vector<ForecastRecord>& records);

// Study tables in the simulation-table layout: one block per statistic, rows
// indexed by N, columns by T.
std::string study_rmse_csv(const StudyTables& tables);
std::string study_auc_csv(const StudyTables& tables);
nlohmann::json study_manifest(const StudyTables& tables);

// Writes a normalized panel (values plus metadata) for the ingest cache.
std::string panel_to_csv(const PanelMatrix& panel);
nlohmann::json panel_meta_json(const PanelMatrix& panel, const std::vector<SeriesSpec>& specs);

// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

struct RunManifest {
  std::string command_line;
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, hash
  std::string version;
  double wall_seconds = 0.0;
};

nlohmann::json to_json(const RunManifest& manifest);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace binfar::io
