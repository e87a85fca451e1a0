#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srbench/dataio/roles.hpp"

namespace srbench::dataio {

enum class Split { kTrain, kTest };

std::string to_string(Split s);
Split split_from_string(const std::string& name);

struct SequenceEntry {
  std::string id;
  std::filesystem::path frame_dir;   // resolved against the manifest directory
  std::filesystem::path gt_file;
  std::filesystem::path role_file;
  int width = 0;
  int height = 0;
  int frame_count = 0;
};

struct DatasetManifest {
  Split split = Split::kTest;
  std::vector<SequenceEntry> sequences;
  std::filesystem::path source_path;  // where this manifest was loaded from
};

/// Loads a manifest JSON document. Raises ManifestUnreadable on any parse or
/// schema problem; content problems are validate_manifest's job.
DatasetManifest load_manifest(const std::filesystem::path& path);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

struct ManifestViolation {
  std::string sequence;
  std::string what;
};

/// Content checks: files exist, declared shape matches the first frame,
/// annotated frame ids fit inside frame_count, every annotated frame image is
/// present. Never throws on content problems; returns them all.
std::vector<ManifestViolation> validate_manifest(const DatasetManifest& manifest);

}  // namespace srbench::dataio
