#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace srbench {

/// Interleaved RGB raster, 8-bit storage, row-major. Working math happens in
/// double precision; values are clamped to [0,255] and rounded half-to-even
/// whenever they are materialized back into storage.
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  ImageBuffer() = default;
  ImageBuffer(int width, int height);
  ImageBuffer(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  void fill(std::uint8_t r, std::uint8_t g, std::uint8_t b);

  /// Top-left crop; the requested rectangle must lie inside the image.
  ImageBuffer crop(int x0, int y0, int w, int h) const;

  bool operator==(const ImageBuffer&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Clamp to [0,255] and round half to even; the single storage-boundary
/// quantizer used everywhere.
std::uint8_t quantize_intensity(double v) noexcept;

}  // namespace srbench
