#include "srbench/pipeline/config.hpp"

#include <fstream>

#include "srbench/core/rng.hpp"
#include "srbench/errors.hpp"

namespace srbench::pipeline {

using nlohmann::json;

std::string to_string(Restoration r) {
  switch (r) {
    case Restoration::kNone: return "none";
    case Restoration::kBicubicBaseline: return "bicubic";
    case Restoration::kRlfn: return "rlfn";
  }
  return "none";
}

Restoration restoration_from_string(const std::string& name) {
  if (name == "none") return Restoration::kNone;
  if (name == "bicubic") return Restoration::kBicubicBaseline;
  if (name == "rlfn") return Restoration::kRlfn;
  throw InvalidConfig("unknown restoration mode '" + name + "'");
}

std::string to_string(FitMode m) {
  return m == FitMode::kStretch ? "stretch" : "letterbox";
}

FitMode fit_mode_from_string(const std::string& name) {
  if (name == "stretch") return FitMode::kStretch;
  if (name == "letterbox") return FitMode::kLetterbox;
  throw InvalidConfig("unknown fit mode '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (dataset_manifest.empty()) throw InvalidConfig("dataset manifest path is required");
  if (degrade_factor != 1 && degrade_factor != 2 && degrade_factor != 3 &&
      degrade_factor != 4 && degrade_factor != 6) {
    throw InvalidConfig("degrade_factor must be one of {1,2,3,4,6}");
  }
  if (restoration != Restoration::kNone && degrade_factor == 1) {
    throw InvalidConfig("restoration needs a degrade_factor > 1");
  }
  if (restoration == Restoration::kRlfn && rlfn_checkpoint.empty()) {
    throw InvalidConfig("rlfn restoration needs a checkpoint path");
  }
  if (detector_input_shape &&
      (detector_input_shape->first < 1 || detector_input_shape->second < 1)) {
    throw InvalidConfig("detector_input_shape must be positive");
  }
  for (const double t : mean_iou_taus) {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidConfig("mean-IoU thresholds must lie in (0,1]");
  }
  if (workers < 1) throw InvalidConfig("workers must be >= 1");
  detector.validate();
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["dataset"] = dataset_manifest.generic_string();
  doc["degrade_factor"] = degrade_factor;
  doc["degrade_kernel"] = imaging::to_string(degrade_kernel);
  doc["restoration"] = to_string(restoration);
  if (restoration == Restoration::kRlfn) {
    doc["rlfn_checkpoint"] = rlfn_checkpoint.generic_string();
  }
  json det;
  det["kind"] = detect::to_string(detector.kind);
  det["score_threshold"] = detector.score_threshold;
  det["max_detections"] = detector.max_detections;
  det["seed"] = detector.seed;
  if (detector.kind == detect::BackendKind::kOracle) {
    det["oracle"] = {{"center_jitter_std", detector.oracle.center_jitter_std},
                     {"size_jitter_std", detector.oracle.size_jitter_std},
                     {"drop_prob", detector.oracle.drop_prob},
                     {"false_positive_rate", detector.oracle.false_positive_rate},
                     {"score_slope", detector.oracle.score_slope},
                     {"score_offset", detector.oracle.score_offset}};
  }
  if (detector.kind == detect::BackendKind::kRandom) {
    det["random"] = {{"max_boxes", detector.random.max_boxes}};
  }
  if (detector.kind == detect::BackendKind::kExternalModel) {
    det["external"] = {{"command", detector.external.command}};
  }
  doc["detector"] = det;
  if (detector_input_shape) {
    doc["detector_input_shape"] = {detector_input_shape->first, detector_input_shape->second};
    doc["fit_mode"] = to_string(fit_mode);
  }
  doc["mean_iou_taus"] = mean_iou_taus;
  doc["seed"] = seed;
  doc["output_dir"] = output_dir.generic_string();
  if (!train_dataset_label.empty()) doc["train_dataset_label"] = train_dataset_label;
  doc["workers"] = workers;
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc,
                                             const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  try {
    const auto resolve = [&base_dir](const std::string& p) {
      std::filesystem::path path(p);
      if (path.is_relative() && !base_dir.empty()) return base_dir / path;
      return path;
    };
    cfg.dataset_manifest = resolve(doc.at("dataset").get<std::string>());
    cfg.degrade_factor = doc.value("degrade_factor", 1);
    cfg.degrade_kernel = imaging::kernel_from_string(doc.value("degrade_kernel", "bicubic"));
    cfg.restoration = restoration_from_string(doc.value("restoration", "none"));
    if (doc.contains("rlfn_checkpoint")) {
      cfg.rlfn_checkpoint = resolve(doc.at("rlfn_checkpoint").get<std::string>());
    }
    if (doc.contains("detector")) {
      const auto& det = doc.at("detector");
      cfg.detector.kind = detect::backend_kind_from_string(det.value("kind", "null"));
      cfg.detector.score_threshold = det.value("score_threshold", 0.05);
      cfg.detector.max_detections = det.value("max_detections", 100);
      cfg.detector.seed = det.value("seed", std::uint64_t{0});
      if (det.contains("oracle")) {
        const auto& o = det.at("oracle");
        cfg.detector.oracle.center_jitter_std = o.value("center_jitter_std", 0.0);
        cfg.detector.oracle.size_jitter_std = o.value("size_jitter_std", 0.0);
        cfg.detector.oracle.drop_prob = o.value("drop_prob", 0.0);
        cfg.detector.oracle.false_positive_rate = o.value("false_positive_rate", 0.0);
        cfg.detector.oracle.score_slope = o.value("score_slope", 1.0);
        cfg.detector.oracle.score_offset = o.value("score_offset", 0.0);
      }
      if (det.contains("random")) {
        cfg.detector.random.max_boxes = det.at("random").value("max_boxes", 10);
      }
      if (det.contains("external")) {
        cfg.detector.external.command = det.at("external").value("command", "");
      }
    }
    if (doc.contains("detector_input_shape")) {
      cfg.detector_input_shape = {doc.at("detector_input_shape").at(0).get<int>(),
                                  doc.at("detector_input_shape").at(1).get<int>()};
      cfg.fit_mode = fit_mode_from_string(doc.value("fit_mode", "stretch"));
    }
    if (doc.contains("mean_iou_taus")) {
      cfg.mean_iou_taus = doc.at("mean_iou_taus").get<std::vector<double>>();
    }
    cfg.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("output_dir")) {
      cfg.output_dir = resolve(doc.at("output_dir").get<std::string>());
    }
    cfg.train_dataset_label = doc.value("train_dataset_label", "");
    cfg.workers = doc.value("workers", 1);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("experiment config schema error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidConfig("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return from_json(doc, path.parent_path());
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string dump = cfg.to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : dump) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace srbench::pipeline
