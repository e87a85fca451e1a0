#pragma once

#include <cstdint>
#include <string>

namespace srbench {

/// Axis-aligned box in (left, top, width, height) convention. Coordinates are
/// continuous pixel units in the frame of one specific image shape; area is
/// w*h with no pixel-inclusive "+1". Degenerate (zero-area) boxes are legal
/// values and have IoU 0 with everything.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const noexcept { return w * h; }
  double right() const noexcept { return x + w; }
  double bottom() const noexcept { return y + h; }

  bool operator==(const BoundingBox&) const = default;
};

/// The two detection classes used throughout: everything human maps to
/// kPerson, the ball to kBall.
enum class ObjectClass { kBall, kPerson };

std::string to_string(ObjectClass cls);
ObjectClass object_class_from_string(const std::string& name);

/// One detector output: a box, a class, and a confidence in [0,1].
struct Detection {
  BoundingBox box;
  ObjectClass cls = ObjectClass::kPerson;
  double score = 0.0;

  bool operator==(const Detection&) const = default;
};

/// One annotated object on one frame; boxes stay in the native frame of the
/// sequence they came from.
struct GroundTruthBox {
  BoundingBox box;
  ObjectClass cls = ObjectClass::kPerson;
  int track_id = 0;
  int frame_id = 1;

  bool operator==(const GroundTruthBox&) const = default;
};

}  // namespace srbench
