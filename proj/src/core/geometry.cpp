#include "srbench/core/geometry.hpp"

#include <algorithm>

#include "srbench/errors.hpp"

namespace srbench {

std::string to_string(ObjectClass cls) {
  return cls == ObjectClass::kBall ? "ball" : "person";
}

ObjectClass object_class_from_string(const std::string& name) {
  if (name == "ball") return ObjectClass::kBall;
  if (name == "person") return ObjectClass::kPerson;
  throw DecodeError("unknown object class '" + name + "'");
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double ix = std::max(0.0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

BoundingBox clip_box(const BoundingBox& b, double width, double height) noexcept {
  const double x0 = std::clamp(b.x, 0.0, width);
  const double x1 = std::clamp(b.right(), x0, width);
  const double y0 = std::clamp(b.y, 0.0, height);
  const double y1 = std::clamp(b.bottom(), y0, height);
  return BoundingBox{x0, y0, x1 - x0, y1 - y0};
}

BoundingBox scale_box(const BoundingBox& b, double sx, double sy) noexcept {
  return BoundingBox{b.x * sx, b.y * sy, b.w * sx, b.h * sy};
}

}  // namespace srbench
