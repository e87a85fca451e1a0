#pragma once

#include <span>
#include <vector>

#include "srbench/core/types.hpp"

namespace srbench::evalmetrics {

struct MatchPair {
  int det_index = 0;  // index into the input detection sequence
  int gt_index = 0;   // index into the input ground-truth sequence
  double iou = 0.0;
};

struct Matching {
  std::vector<MatchPair> pairs;
  std::vector<int> unmatched_dets;
  std::vector<int> unmatched_gts;
  double tau = 0.0;
};

/// Greedy one-to-one matcher for one frame and one class. Detections of the
/// class are processed in descending score order (ties broken by box x, y, w,
/// h); each takes the highest-IoU unmatched ground truth of the same class
/// with iou >= tau, ties broken by ground-truth index.
Matching match_detections(std::span<const Detection> dets,
                          std::span<const GroundTruthBox> gts, double tau,
                          ObjectClass cls);

/// Canonical processing order for detections whose scores tie. Pinned as part
/// of the metric definition so results are invariant under input permutation.
bool detection_order_less(const Detection& a, const Detection& b) noexcept;

}  // namespace srbench::evalmetrics
