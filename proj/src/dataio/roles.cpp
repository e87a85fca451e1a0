#include "srbench/dataio/roles.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "srbench/errors.hpp"

namespace srbench::dataio {

const std::vector<std::string>& role_vocabulary() {
  static const std::vector<std::string> kRoles = {
      "player team left", "player team right",  "goalkeeper team left",
      "goalkeeper team right", "main referee",  "side referee",
      "staff",             "ball"};
  return kRoles;
}

ObjectClass map_role_to_class(std::string_view role) {
  const auto& vocab = role_vocabulary();
  if (std::find(vocab.begin(), vocab.end(), role) == vocab.end()) {
    throw UnknownRole("role '" + std::string(role) + "' is not in the eight-role vocabulary");
  }
  return role == "ball" ? ObjectClass::kBall : ObjectClass::kPerson;
}

RoleMap parse_role_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open role file '" + path.string() + "'");

  RoleMap roles;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw MalformedLine(line_no, "expected 'track_id=role', got '" + line + "'");
    }
    const std::string id_str = line.substr(first, eq - first);
    char* end = nullptr;
    const long track = std::strtol(id_str.c_str(), &end, 10);
    if (end != id_str.c_str() + id_str.size() || id_str.empty() || track < 0) {
      throw MalformedLine(line_no, "bad track id '" + id_str + "'");
    }
    std::string role = line.substr(eq + 1);
    while (!role.empty() && (role.back() == ' ' || role.back() == '\t')) role.pop_back();
    map_role_to_class(role);  // validates against the vocabulary
    roles[static_cast<int>(track)] = role;
  }
  return roles;
}

FrameGroundTruth label_ground_truth(const MotGroundTruth& gt, const RoleMap& roles) {
  FrameGroundTruth out;
  for (const auto& [frame, tracks] : gt) {
    auto& boxes = out[frame];
    boxes.reserve(tracks.size());
    for (const auto& [track, box] : tracks) {
      const auto it = roles.find(track);
      if (it == roles.end()) {
        throw TrackWithoutRole("track " + std::to_string(track) + " (frame " +
                               std::to_string(frame) + ") has no role entry");
      }
      GroundTruthBox g;
      g.box = box;
      g.cls = map_role_to_class(it->second);
      g.track_id = track;
      g.frame_id = frame;
      boxes.push_back(g);
    }
  }
  return out;
}

FrameGroundTruth load_ground_truth(const std::filesystem::path& gt_file,
                                   const std::filesystem::path& role_file) {
  return label_ground_truth(parse_mot_gt(gt_file), parse_role_map(role_file));
}

}  // namespace srbench::dataio
