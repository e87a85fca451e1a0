#include "srbench/evalmetrics/evaluate.hpp"

#include <algorithm>
#include <tuple>

#include "srbench/errors.hpp"

namespace srbench::evalmetrics {
namespace {

// One scored detection with its match outcome, ready for PR accumulation.
struct Mark {
  double score = 0.0;
  bool tp = false;
  int frame_id = 0;
  BoundingBox box;
};

// Global PR order: descending score, ties by (frame, x, y, w, h). Pinned so
// evaluation is invariant under frame and detection reordering.
bool mark_less(const Mark& a, const Mark& b) {
  return std::tie(b.score, a.frame_id, a.box.x, a.box.y, a.box.w, a.box.h) <
         std::tie(a.score, b.frame_id, b.box.x, b.box.y, b.box.w, b.box.h);
}

// 101-point interpolated AP from sorted marks. Precision envelope taken from
// the right; recall points sampled at i/100.
double ap_101(std::vector<Mark>& marks, int total_gt) {
  if (total_gt == 0) return 0.0;  // caller guarantees marks non-empty here
  std::sort(marks.begin(), marks.end(), mark_less);

  const int n = static_cast<int>(marks.size());
  std::vector<double> precision(n), recall(n);
  int tp_cum = 0;
  for (int k = 0; k < n; ++k) {
    if (marks[k].tp) ++tp_cum;
    precision[k] = static_cast<double>(tp_cum) / (k + 1);
    recall[k] = static_cast<double>(tp_cum) / total_gt;
  }
  for (int k = n - 2; k >= 0; --k) {
    precision[k] = std::max(precision[k], precision[k + 1]);
  }

  double sum = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double r = static_cast<double>(i) / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / 101.0;
}

struct ClassThresholdAccumulator {
  std::vector<Mark> marks;
  int total_gt = 0;
  std::vector<double> matched_ious;
};

int count_gt(std::span<const GroundTruthBox> gts, ObjectClass cls) {
  int n = 0;
  for (const auto& g : gts) {
    if (g.cls == cls) ++n;
  }
  return n;
}

void accumulate_frame(std::span<const Detection> dets, std::span<const GroundTruthBox> gts,
                      double tau, ObjectClass cls, int frame_id,
                      ClassThresholdAccumulator& acc) {
  const Matching m = match_detections(dets, gts, tau, cls);
  for (const auto& p : m.pairs) {
    acc.marks.push_back({dets[p.det_index].score, true, frame_id, dets[p.det_index].box});
    acc.matched_ious.push_back(p.iou);
  }
  for (const int di : m.unmatched_dets) {
    acc.marks.push_back({dets[di].score, false, frame_id, dets[di].box});
  }
  acc.total_gt += count_gt(gts, cls);
}

}  // namespace

const std::array<double, 10>& iou_threshold_grid() {
  static const std::array<double, 10> kGrid = {0.50, 0.55, 0.60, 0.65, 0.70,
                                               0.75, 0.80, 0.85, 0.90, 0.95};
  return kGrid;
}

double average_precision(std::span<const Detection> dets,
                         std::span<const GroundTruthBox> gts, double tau,
                         ObjectClass cls) {
  ClassThresholdAccumulator acc;
  accumulate_frame(dets, gts, tau, cls, 0, acc);
  if (acc.total_gt == 0) return 0.0;
  return ap_101(acc.marks, acc.total_gt);
}

EvalResult evaluate(const FrameDetections& dets, const FrameGroundTruth& gts,
                    const std::vector<double>& mean_iou_taus) {
  for (const auto& [frame, frame_dets] : dets) {
    (void)frame_dets;
    if (!gts.contains(frame)) {
      throw FrameMismatch("detections reference frame " + std::to_string(frame) +
                          " absent from the ground-truth set");
    }
  }

  // Threshold grid plus any extra mean-IoU thresholds.
  std::vector<double> taus(iou_threshold_grid().begin(), iou_threshold_grid().end());
  for (const double t : mean_iou_taus) {
    if (std::find(taus.begin(), taus.end(), t) == taus.end()) taus.push_back(t);
  }

  static const std::array<ObjectClass, 2> kClasses = {ObjectClass::kBall, ObjectClass::kPerson};
  static const std::vector<Detection> kNoDets;

  // Which classes participate: present in dets or gts anywhere in the split.
  std::map<ObjectClass, bool> class_present;
  for (const auto& [frame, list] : dets) {
    (void)frame;
    for (const auto& d : list) class_present[d.cls] = true;
  }
  for (const auto& [frame, list] : gts) {
    (void)frame;
    for (const auto& g : list) class_present[g.cls] = true;
  }

  EvalResult result;
  std::map<double, std::vector<double>> pooled_ious;  // tau -> matched IoUs over classes+frames

  double ap_sum_all = 0.0;
  int ap_count_all = 0;
  double ap_sum_50 = 0.0;
  int ap_count_50 = 0;

  for (const ObjectClass cls : kClasses) {
    if (!class_present[cls]) continue;
    std::array<double, 10> per_threshold{};
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      const double tau = taus[ti];
      ClassThresholdAccumulator acc;
      for (const auto& [frame, frame_gts] : gts) {
        const auto dit = dets.find(frame);
        const auto& frame_dets = dit == dets.end() ? kNoDets : dit->second;
        accumulate_frame(frame_dets, frame_gts, tau, cls, frame, acc);
      }

      const bool on_grid = ti < iou_threshold_grid().size();
      if (on_grid) {
        const double ap = acc.total_gt == 0 ? 0.0 : ap_101(acc.marks, acc.total_gt);
        per_threshold[ti] = ap * 100.0;
        ap_sum_all += ap;
        ++ap_count_all;
        if (tau == 0.50) {
          ap_sum_50 += ap;
          ++ap_count_50;
        }
      }
      if (std::find(mean_iou_taus.begin(), mean_iou_taus.end(), tau) != mean_iou_taus.end()) {
        auto& pool = pooled_ious[tau];
        pool.insert(pool.end(), acc.matched_ious.begin(), acc.matched_ious.end());
      }
    }
    result.per_class_ap[cls] = per_threshold;
  }

  result.map_50_95 = ap_count_all > 0 ? ap_sum_all / ap_count_all * 100.0 : 0.0;
  result.map_50 = ap_count_50 > 0 ? ap_sum_50 / ap_count_50 * 100.0 : 0.0;

  for (const double t : mean_iou_taus) {
    MeanIouValue v;
    const auto& pool = pooled_ious[t];
    if (!pool.empty()) {
      double sum = 0.0;
      for (const double x : pool) sum += x;
      v.percent = sum / static_cast<double>(pool.size()) * 100.0;
      v.defined = true;
    }
    result.mean_iou_at[t] = v;
  }
  return result;
}

}  // namespace srbench::evalmetrics
