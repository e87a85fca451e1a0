#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "srbench/core/types.hpp"
#include "srbench/dataio/roles.hpp"
#include "srbench/evalmetrics/matching.hpp"

namespace srbench::evalmetrics {

/// The ten COCO-style IoU thresholds 0.50:0.05:0.95.
const std::array<double, 10>& iou_threshold_grid();

struct MeanIouValue {
  double percent = 0.0;  // mean IoU over matched pairs, as a percentage
  bool defined = false;  // false when zero pairs matched at this threshold
};

struct EvalResult {
  double map_50_95 = 0.0;  // percent
  double map_50 = 0.0;     // percent
  std::map<double, MeanIouValue> mean_iou_at;
  // Per class: AP (percent) at each threshold of iou_threshold_grid().
  std::map<ObjectClass, std::array<double, 10>> per_class_ap;
};

using FrameDetections = std::map<int, std::vector<Detection>>;
using dataio::FrameGroundTruth;

/// 101-point interpolated average precision for one pooled collection,
/// in [0,1]. Zero when detections exist but no ground truth of the class
/// does.
double average_precision(std::span<const Detection> dets,
                         std::span<const GroundTruthBox> gts, double tau,
                         ObjectClass cls);

/// Full evaluation across frames: per-class AP on the threshold grid,
/// mAP@0.50:0.95 and mAP@0.50 (mean over classes, as percentages), and mean
/// IoU over matched pairs at each requested threshold. A detection frame
/// absent from the ground-truth set raises FrameMismatch. Classes absent from
/// both detections and ground truth are excluded from class averaging.
EvalResult evaluate(const FrameDetections& dets, const FrameGroundTruth& gts,
                    const std::vector<double>& mean_iou_taus = {0.5, 0.7, 0.9});

}  // namespace srbench::evalmetrics
