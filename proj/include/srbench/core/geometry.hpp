#pragma once

#include "srbench/core/types.hpp"

namespace srbench {

/// Intersection over union of two boxes. Returns 0 when the union area is 0,
/// so degenerate boxes never divide by zero.
double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Clips a box to [0,width] x [0,height]. Boxes entirely outside collapse to
/// a zero-area box on the nearest edge. Idempotent.
BoundingBox clip_box(const BoundingBox& b, double width, double height) noexcept;

/// Scales a box by (sx, sy) about the origin.
BoundingBox scale_box(const BoundingBox& b, double sx, double sy) noexcept;

}  // namespace srbench
