#include "srbench/evalmetrics/matching.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "srbench/core/geometry.hpp"
#include "srbench/errors.hpp"

namespace srbench::evalmetrics {

bool detection_order_less(const Detection& a, const Detection& b) noexcept {
  return std::tie(b.score, a.box.x, a.box.y, a.box.w, a.box.h) <
         std::tie(a.score, b.box.x, b.box.y, b.box.w, b.box.h);
}

Matching match_detections(std::span<const Detection> dets,
                          std::span<const GroundTruthBox> gts, double tau,
                          ObjectClass cls) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw InvalidConfig("match threshold must lie in (0,1], got " + std::to_string(tau));
  }

  Matching result;
  result.tau = tau;

  std::vector<int> det_order;
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
    if (dets[i].cls == cls) det_order.push_back(i);
  }
  std::sort(det_order.begin(), det_order.end(), [&](int a, int b) {
    return detection_order_less(dets[a], dets[b]);
  });

  std::vector<bool> gt_taken(gts.size(), false);
  for (const int di : det_order) {
    int best_gt = -1;
    double best_iou = 0.0;
    for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
      if (gt_taken[gi] || gts[gi].cls != cls) continue;
      const double v = iou(dets[di].box, gts[gi].box);
      if (v >= tau && v > best_iou) {
        best_iou = v;
        best_gt = gi;  // strict > keeps the lowest index on ties
      }
    }
    if (best_gt >= 0) {
      gt_taken[best_gt] = true;
      result.pairs.push_back({di, best_gt, best_iou});
    } else {
      result.unmatched_dets.push_back(di);
    }
  }
  for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
    if (gts[gi].cls == cls && !gt_taken[gi]) result.unmatched_gts.push_back(gi);
  }
  return result;
}

}  // namespace srbench::evalmetrics
