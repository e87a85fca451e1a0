#pragma once

#include "srbench/pipeline/report.hpp"

namespace srbench::pipeline {

/// Geometry mapping from the native annotation frame into the frame the
/// detector sees: x' = x*sx + ox. Stretch fits have zero offsets; letterbox
/// fits add centered padding.
struct BoxTransform {
  double sx = 1.0;
  double sy = 1.0;
  double ox = 0.0;
  double oy = 0.0;

  BoundingBox apply(const BoundingBox& b) const noexcept {
    return BoundingBox{b.x * sx + ox, b.y * sy + oy, b.w * sx, b.h * sy};
  }
  BoundingBox invert(const BoundingBox& b) const noexcept {
    return BoundingBox{(b.x - ox) / sx, (b.y - oy) / sy, b.w / sx, b.h / sy};
  }
};

/// Letterboxes an image into (target_w, target_h): scale preserving aspect
/// ratio, centered, black padding. Returns the pasted image and the transform
/// from source coordinates into the letterboxed frame.
std::pair<ImageBuffer, BoxTransform> letterbox_image(const ImageBuffer& img, int target_w,
                                                     int target_h);

/// Runs the full degrade -> restore -> detect -> evaluate loop described by
/// the config and assembles the report. Frame work fans out over
/// cfg.workers threads; results are identical for any worker count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace srbench::pipeline
