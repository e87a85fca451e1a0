#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "srbench/evalmetrics/evaluate.hpp"
#include "srbench/imaging/quality.hpp"
#include "srbench/pipeline/config.hpp"

namespace srbench::pipeline {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "srbench 0.1.0";

struct StageTimings {
  double load_s = 0.0;
  double degrade_s = 0.0;
  double restore_s = 0.0;
  double detect_s = 0.0;
  double evaluate_s = 0.0;
  double report_s = 0.0;
  double total_s = 0.0;       // sum of the stages above
  double wall_clock_s = 0.0;  // informational elapsed time
};

/// Self-describing result of one experiment run: config echo, quality and
/// detection metrics, timings and provenance. Everything except wall-clock
/// time reproduces bit-exactly when the echoed config is re-run.
struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  nlohmann::json config_echo;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string code_version = kCodeVersion;

  // Table-row identity, paper-style.
  std::string input_shape;    // shape entering restoration, "WxH"
  std::string train_dataset;  // SR training set label or "-"
  std::string sr;             // "-", "bicubic" or "RLFN"
  std::string output_shape;   // shape entering the detector, "WxH"
  std::string scale;          // "-" or "x2".."x6"

  std::optional<imaging::QualityReport> quality;
  evalmetrics::EvalResult eval;
  StageTimings timings;

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& doc);  // SchemaVersionMismatch
};

/// Pinned flat-table column set for `run` output.
std::string report_table_header();
std::string report_table_row(const ExperimentReport& report);

/// Writes report.json + report.csv into dir.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);
ExperimentReport read_report(const std::filesystem::path& json_file);

/// JSON (de)serialization of an EvalResult with the published column names.
nlohmann::json eval_result_to_json(const evalmetrics::EvalResult& result);
evalmetrics::EvalResult eval_result_from_json(const nlohmann::json& doc);

}  // namespace srbench::pipeline
