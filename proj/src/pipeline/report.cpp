#include "srbench/pipeline/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "srbench/errors.hpp"

namespace srbench::pipeline {

using nlohmann::json;

namespace {

std::string format_tau(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", tau);
  return std::string(buf);
}

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::string(buf);
}

json quality_to_json(const imaging::QualityReport& q) {
  json doc;
  doc["psnr_db"] = std::isinf(q.psnr_db) ? json("inf") : json(q.psnr_db);
  doc["mse"] = q.mse;
  doc["infinite_psnr_count"] = q.infinite_psnr_count;
  doc["per_image"] = json::array();
  for (const auto& e : q.per_image) {
    doc["per_image"].push_back(
        {e.id, std::isinf(e.psnr_db) ? json("inf") : json(e.psnr_db), e.mse});
  }
  return doc;
}

imaging::QualityReport quality_from_json(const json& doc) {
  imaging::QualityReport q;
  const auto read_psnr = [](const json& v) {
    return v.is_string() ? std::numeric_limits<double>::infinity() : v.get<double>();
  };
  q.psnr_db = read_psnr(doc.at("psnr_db"));
  q.mse = doc.at("mse").get<double>();
  q.infinite_psnr_count = doc.at("infinite_psnr_count").get<int>();
  for (const auto& row : doc.at("per_image")) {
    q.per_image.push_back(
        {row.at(0).get<std::string>(), read_psnr(row.at(1)), row.at(2).get<double>()});
  }
  return q;
}

}  // namespace

json eval_result_to_json(const evalmetrics::EvalResult& result) {
  json doc;
  doc["mAP@IoU=0.50:0.95"] = result.map_50_95;
  doc["mAP@IoU=0.50"] = result.map_50;
  for (const auto& [tau, value] : result.mean_iou_at) {
    const std::string key = "meanIoU@" + format_tau(tau);
    doc[key] = value.defined ? json(value.percent) : json(nullptr);
  }
  json per_class;
  for (const auto& [cls, aps] : result.per_class_ap) {
    per_class[to_string(cls)] = aps;
  }
  doc["per_class_ap"] = per_class;
  return doc;
}

evalmetrics::EvalResult eval_result_from_json(const json& doc) {
  evalmetrics::EvalResult result;
  result.map_50_95 = doc.at("mAP@IoU=0.50:0.95").get<double>();
  result.map_50 = doc.at("mAP@IoU=0.50").get<double>();
  for (const auto& [key, value] : doc.items()) {
    constexpr std::string_view kPrefix = "meanIoU@";
    if (key.rfind(kPrefix, 0) == 0) {
      const double tau = std::stod(key.substr(kPrefix.size()));
      evalmetrics::MeanIouValue v;
      if (!value.is_null()) {
        v.percent = value.get<double>();
        v.defined = true;
      }
      result.mean_iou_at[tau] = v;
    }
  }
  if (doc.contains("per_class_ap")) {
    for (const auto& [name, aps] : doc.at("per_class_ap").items()) {
      result.per_class_ap[object_class_from_string(name)] = aps.get<std::array<double, 10>>();
    }
  }
  return result;
}

json ExperimentReport::to_json() const {
  json doc;
  doc["schema_version"] = schema_version;
  doc["config"] = config_echo;
  doc["config_hash"] = config_hash;
  doc["seed"] = seed;
  doc["code_version"] = code_version;
  doc["row"] = {{"input_shape", input_shape},
                {"train_dataset", train_dataset},
                {"sr", sr},
                {"output_shape", output_shape},
                {"scale", scale}};
  if (quality) doc["quality"] = quality_to_json(*quality);
  doc["eval"] = eval_result_to_json(eval);
  doc["timings"] = {{"load_s", timings.load_s},       {"degrade_s", timings.degrade_s},
                    {"restore_s", timings.restore_s}, {"detect_s", timings.detect_s},
                    {"evaluate_s", timings.evaluate_s}, {"report_s", timings.report_s},
                    {"total_s", timings.total_s},     {"wall_clock_s", timings.wall_clock_s}};
  return doc;
}

ExperimentReport ExperimentReport::from_json(const json& doc) {
  ExperimentReport report;
  const int version = doc.value("schema_version", -1);
  if (version != kReportSchemaVersion) {
    throw SchemaVersionMismatch("report schema version " + std::to_string(version) +
                                ", expected " + std::to_string(kReportSchemaVersion));
  }
  try {
    report.schema_version = version;
    report.config_echo = doc.at("config");
    report.config_hash = doc.at("config_hash").get<std::string>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.code_version = doc.at("code_version").get<std::string>();
    const auto& row = doc.at("row");
    report.input_shape = row.at("input_shape").get<std::string>();
    report.train_dataset = row.at("train_dataset").get<std::string>();
    report.sr = row.at("sr").get<std::string>();
    report.output_shape = row.at("output_shape").get<std::string>();
    report.scale = row.at("scale").get<std::string>();
    if (doc.contains("quality")) report.quality = quality_from_json(doc.at("quality"));
    report.eval = eval_result_from_json(doc.at("eval"));
    const auto& t = doc.at("timings");
    report.timings.load_s = t.at("load_s").get<double>();
    report.timings.degrade_s = t.at("degrade_s").get<double>();
    report.timings.restore_s = t.at("restore_s").get<double>();
    report.timings.detect_s = t.at("detect_s").get<double>();
    report.timings.evaluate_s = t.at("evaluate_s").get<double>();
    report.timings.report_s = t.at("report_s").get<double>();
    report.timings.total_s = t.at("total_s").get<double>();
    report.timings.wall_clock_s = t.at("wall_clock_s").get<double>();
  } catch (const json::exception& e) {
    throw DecodeError(std::string("report schema error: ") + e.what());
  }
  return report;
}

std::string report_table_header() {
  return "input_shape,train_dataset,sr,output_shape,scale,"
         "mAP@IoU=0.50:0.95,mAP@IoU=0.50,meanIoU@0.5,meanIoU@0.9";
}

std::string report_table_row(const ExperimentReport& report) {
  const auto mean_iou_cell = [&report](double tau) -> std::string {
    const auto it = report.eval.mean_iou_at.find(tau);
    if (it == report.eval.mean_iou_at.end() || !it->second.defined) return "-";
    return format_metric(it->second.percent);
  };
  std::string row = report.input_shape + "," + report.train_dataset + "," + report.sr + "," +
                    report.output_shape + "," + report.scale + "," +
                    format_metric(report.eval.map_50_95) + "," +
                    format_metric(report.eval.map_50) + "," + mean_iou_cell(0.5) + "," +
                    mean_iou_cell(0.9);
  return row;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json", std::ios::trunc);
    if (!out) throw IoError("cannot write report.json in '" + dir.string() + "'");
    out << report.to_json().dump(2) << "\n";
  }
  {
    std::ofstream out(dir / "report.csv", std::ios::trunc);
    if (!out) throw IoError("cannot write report.csv in '" + dir.string() + "'");
    out << report_table_header() << "\n" << report_table_row(report) << "\n";
  }
}

ExperimentReport read_report(const std::filesystem::path& json_file) {
  std::ifstream in(json_file);
  if (!in) throw MissingFile("cannot open report '" + json_file.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DecodeError("report '" + json_file.string() + "' is not valid JSON: " + e.what());
  }
  return ExperimentReport::from_json(doc);
}

}  // namespace srbench::pipeline
