#include "srbench/core/image.hpp"

#include <cmath>

#include "srbench/errors.hpp"

namespace srbench {

ImageBuffer::ImageBuffer(int width, int height)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(width) * height * kChannels, 0) {
  if (width < 1 || height < 1) throw InvalidDimensions("image dimensions must be positive");
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) throw InvalidDimensions("image dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * height * kChannels) {
    throw InvalidDimensions("pixel data length does not match width*height*3");
  }
}

void ImageBuffer::fill(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  for (std::size_t i = 0; i + 2 < data_.size(); i += kChannels) {
    data_[i] = r;
    data_[i + 1] = g;
    data_[i + 2] = b;
  }
}

ImageBuffer ImageBuffer::crop(int x0, int y0, int w, int h) const {
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > width_ || y0 + h > height_) {
    throw InvalidDimensions("crop rectangle outside image");
  }
  ImageBuffer out(w, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = &data_[((static_cast<std::size_t>(y0) + y) * width_ + x0) * kChannels];
    std::uint8_t* dst = &out.data()[static_cast<std::size_t>(y) * w * kChannels];
    std::copy(src, src + static_cast<std::size_t>(w) * kChannels, dst);
  }
  return out;
}

std::uint8_t quantize_intensity(double v) noexcept {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  // nearbyint honours the default round-to-nearest-even mode.
  return static_cast<std::uint8_t>(std::nearbyint(v));
}

}  // namespace srbench
