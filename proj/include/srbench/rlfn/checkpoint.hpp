#pragma once

#include <filesystem>
#include <optional>

#include "srbench/rlfn/model.hpp"

namespace srbench::rlfn {

/// Versioned binary container: magic "SRDB", format version, serialized
/// SRModelConfig plus dataset label, then named parameter tensors with shape
/// headers as little-endian float32. Parameters live on the float32 grid, so
/// a save/load round trip is bit-exact.
void save_checkpoint(const SRModel& model, const std::filesystem::path& path);

/// Loads a checkpoint; when expected_scale is given, a differing checkpoint
/// scale raises ScaleMismatch before any tensor data is materialized.
SRModel load_checkpoint(const std::filesystem::path& path,
                        std::optional<int> expected_scale = std::nullopt);

}  // namespace srbench::rlfn
