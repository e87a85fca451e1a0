#pragma once

#include <filesystem>
#include <map>
#include <utility>
#include <vector>

#include "srbench/core/types.hpp"

namespace srbench::dataio {

/// frame_id -> (track_id, box) in native pixel coordinates, unclipped.
using MotGroundTruth = std::map<int, std::vector<std::pair<int, BoundingBox>>>;

/// Parses MOT-style annotations: `frame,track_id,x,y,w,h[,...]`, one record
/// per line, LF or CRLF, no header. Extra fields are ignored. Raises
/// MalformedLine (with the 1-based line number) or EmptyFile.
MotGroundTruth parse_mot_gt(const std::filesystem::path& path);

/// Serializes the retained fields back out; parse(write(parse(x))) is
/// lossless.
void write_mot_gt(const MotGroundTruth& gt, const std::filesystem::path& path);

}  // namespace srbench::dataio
