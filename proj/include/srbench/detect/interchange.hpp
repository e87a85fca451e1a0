#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "srbench/core/types.hpp"

namespace srbench::detect {

/// One line of the detection interchange format:
/// `frame_id,class,score,x,y,w,h`. The label stays a raw string here so the
/// same parser serves both our own files ("ball"/"person") and external
/// detector vocabularies.
struct InterchangeRecord {
  int frame_id = 0;
  std::string label;
  double score = 0.0;
  BoundingBox box;
};

std::vector<InterchangeRecord> parse_interchange_records(const std::string& text);

/// Sidecar metadata written next to every detection file, so reference-frame
/// conversion stays auditable.
struct DetectionMeta {
  std::pair<int, int> image_shape{0, 0};      // shape detections were made at
  std::pair<int, int> reference_shape{0, 0};  // native annotation shape
  std::string backend;
  double score_threshold = 0.0;
  int max_detections = 0;
  std::uint64_t seed = 0;
};

using FrameDetections = std::map<int, std::vector<Detection>>;

/// Writes `frame_id,class,score,x,y,w,h` lines plus `<path>.meta.json`.
void write_detections(const FrameDetections& dets, const std::filesystem::path& path,
                      const DetectionMeta& meta);

/// Reads a detection file; the sidecar is required when meta is requested.
FrameDetections read_detections(const std::filesystem::path& path,
                                DetectionMeta* meta = nullptr);

}  // namespace srbench::detect
