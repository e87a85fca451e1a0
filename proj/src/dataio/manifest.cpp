#include "srbench/dataio/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"

namespace srbench::dataio {

using nlohmann::json;

std::string to_string(Split s) { return s == Split::kTrain ? "TRAIN" : "TEST"; }

Split split_from_string(const std::string& name) {
  if (name == "TRAIN") return Split::kTrain;
  if (name == "TEST") return Split::kTest;
  throw ManifestUnreadable("split must be TRAIN or TEST, got '" + name + "'");
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestUnreadable("cannot open manifest '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ManifestUnreadable("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }

  DatasetManifest manifest;
  manifest.source_path = path;
  const auto base = path.parent_path();
  try {
    manifest.split = split_from_string(doc.at("split").get<std::string>());
    for (const auto& s : doc.at("sequences")) {
      SequenceEntry e;
      e.id = s.at("id").get<std::string>();
      e.frame_dir = base / s.at("frame_dir").get<std::string>();
      e.gt_file = base / s.at("gt_file").get<std::string>();
      e.role_file = base / s.at("role_file").get<std::string>();
      e.width = s.at("shape").at(0).get<int>();
      e.height = s.at("shape").at(1).get<int>();
      e.frame_count = s.at("frame_count").get<int>();
      if (e.width < 1 || e.height < 1) {
        throw ManifestUnreadable("sequence '" + e.id + "' has a non-positive shape");
      }
      manifest.sequences.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ManifestUnreadable("manifest '" + path.string() + "' schema error: " + e.what());
  }
  return manifest;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  const auto base = path.parent_path();
  json doc;
  doc["split"] = to_string(manifest.split);
  doc["sequences"] = json::array();
  for (const auto& e : manifest.sequences) {
    json s;
    s["id"] = e.id;
    s["frame_dir"] = std::filesystem::relative(e.frame_dir, base).generic_string();
    s["gt_file"] = std::filesystem::relative(e.gt_file, base).generic_string();
    s["role_file"] = std::filesystem::relative(e.role_file, base).generic_string();
    s["shape"] = {e.width, e.height};
    s["frame_count"] = e.frame_count;
    doc["sequences"].push_back(std::move(s));
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << "\n";
}

std::vector<ManifestViolation> validate_manifest(const DatasetManifest& manifest) {
  std::vector<ManifestViolation> violations;
  const auto add = [&](const std::string& seq, std::string what) {
    violations.push_back({seq, std::move(what)});
  };

  for (const auto& e : manifest.sequences) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(e.frame_dir)) {
      add(e.id, "frame directory '" + e.frame_dir.string() + "' does not exist");
      continue;
    }
    if (!fs::is_regular_file(e.gt_file)) {
      add(e.id, "gt file '" + e.gt_file.string() + "' does not exist");
      continue;
    }
    if (!fs::is_regular_file(e.role_file)) {
      add(e.id, "role file '" + e.role_file.string() + "' does not exist");
      continue;
    }

    MotGroundTruth gt;
    try {
      gt = parse_mot_gt(e.gt_file);
    } catch (const Error& err) {
      add(e.id, std::string("gt file unparseable: ") + err.what());
      continue;
    }
    try {
      label_ground_truth(gt, parse_role_map(e.role_file));
    } catch (const Error& err) {
      add(e.id, std::string("role labelling failed: ") + err.what());
    }

    if (!gt.empty() && gt.rbegin()->first > e.frame_count) {
      add(e.id, "gt references frame " + std::to_string(gt.rbegin()->first) +
                    " beyond frame_count " + std::to_string(e.frame_count));
    }

    bool checked_shape = false;
    for (const auto& [frame, boxes] : gt) {
      (void)boxes;
      const auto frame_path = e.frame_dir / imaging::frame_filename(frame);
      if (!fs::is_regular_file(frame_path)) {
        add(e.id, "missing frame image '" + frame_path.filename().string() + "'");
        continue;
      }
      if (!checked_shape) {
        checked_shape = true;
        try {
          const auto img = imaging::load_image(frame_path);
          if (img.width() != e.width || img.height() != e.height) {
            add(e.id, "declared shape " + std::to_string(e.width) + "x" + std::to_string(e.height) +
                          " but frame " + std::to_string(frame) + " is " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()));
          }
        } catch (const Error& err) {
          add(e.id, std::string("frame undecodable: ") + err.what());
        }
      }
    }
  }
  return violations;
}

}  // namespace srbench::dataio
