#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "srbench/core/types.hpp"
#include "srbench/dataio/mot.hpp"

namespace srbench::dataio {

/// The closed eight-role vocabulary of the tracking annotations.
const std::vector<std::string>& role_vocabulary();

/// "ball" -> kBall, the seven human roles -> kPerson; anything else raises
/// UnknownRole.
ObjectClass map_role_to_class(std::string_view role);

/// track_id -> role string. Every role must be in the vocabulary.
using RoleMap = std::map<int, std::string>;

/// Parses `track_id=role string` lines; blank lines and `#` comments are
/// ignored.
RoleMap parse_role_map(const std::filesystem::path& path);

/// frame_id -> class-labelled ground truth boxes, still in the native frame.
using FrameGroundTruth = std::map<int, std::vector<GroundTruthBox>>;

/// Joins MOT ground truth with the role map. A track missing from the role
/// map raises TrackWithoutRole. No boxes are dropped.
FrameGroundTruth label_ground_truth(const MotGroundTruth& gt, const RoleMap& roles);

/// Convenience composition: parse both files and join.
FrameGroundTruth load_ground_truth(const std::filesystem::path& gt_file,
                                   const std::filesystem::path& role_file);

}  // namespace srbench::dataio
