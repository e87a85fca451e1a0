#pragma once

#include <cstdint>
#include <filesystem>

#include "srbench/dataio/manifest.hpp"

namespace srbench::synth {

/// Layout knobs for a self-contained toy tracking dataset: frames on a green
/// field with drawn players and a ball, MOT gt, role files, and a manifest.
struct ToyDatasetSpec {
  int sequences = 3;
  int frames_per_sequence = 4;
  int width = 192;   // divisible by 2, 3, 4 and 6
  int height = 108;
  int players = 3;
  std::uint64_t seed = 1;
};

/// Writes the dataset under root and returns the manifest path.
std::filesystem::path write_toy_dataset(const std::filesystem::path& root,
                                        const ToyDatasetSpec& spec);

}  // namespace srbench::synth
