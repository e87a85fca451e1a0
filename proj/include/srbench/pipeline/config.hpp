#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srbench/detect/backend.hpp"
#include "srbench/imaging/resample.hpp"

namespace srbench::pipeline {

enum class Restoration { kNone, kBicubicBaseline, kRlfn };

std::string to_string(Restoration r);
Restoration restoration_from_string(const std::string& name);

enum class FitMode { kStretch, kLetterbox };

std::string to_string(FitMode m);
FitMode fit_mode_from_string(const std::string& name);

/// Declarative description of one experiment run (one table row).
struct ExperimentConfig {
  std::filesystem::path dataset_manifest;
  int degrade_factor = 1;  // one of {1,2,3,4,6}
  imaging::ResampleKernel degrade_kernel = imaging::ResampleKernel::kBicubic;
  Restoration restoration = Restoration::kNone;
  std::filesystem::path rlfn_checkpoint;
  detect::DetectorBackend detector;
  std::optional<std::pair<int, int>> detector_input_shape;
  FitMode fit_mode = FitMode::kStretch;
  std::vector<double> mean_iou_taus = {0.5, 0.7, 0.9};
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  std::string train_dataset_label;  // overrides the checkpoint label when set
  int workers = 1;

  void validate() const;  // InvalidConfig

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& doc,
                                    const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

/// Stable FNV-1a hash of the canonical config document; recorded in reports.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace srbench::pipeline
