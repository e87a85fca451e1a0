#pragma once

#include <filesystem>
#include <string>

#include "srbench/core/image.hpp"

namespace srbench::imaging {

/// Loads a binary PPM (P6, maxval 255). A P5 file raises
/// UnsupportedChannelCount; anything else that fails to decode raises
/// DecodeError; a missing file raises MissingFile.
ImageBuffer load_image(const std::filesystem::path& path);

/// Writes a binary PPM. The parent directory must already exist (IoError).
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

/// Frame naming convention of the tracking-dataset layout: 000001.ppm etc.
std::string frame_filename(int frame_id, const std::string& ext = "ppm");

}  // namespace srbench::imaging
