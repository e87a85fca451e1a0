#include "srbench/imaging/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "srbench/errors.hpp"

namespace srbench::imaging {
namespace {

double bilinear_kernel(double t) {
  t = std::abs(t);
  return t < 1.0 ? 1.0 - t : 0.0;
}

// Catmull-Rom cubic (a = -0.5), support 2.
double bicubic_kernel(double t) {
  t = std::abs(t);
  if (t < 1.0) return ((1.5 * t - 2.5) * t) * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

struct AxisWeights {
  // Per output index: first source tap and its normalized weights.
  std::vector<int> start;
  std::vector<std::vector<double>> weights;
};

AxisWeights build_weights(int in_size, int out_size, ResampleKernel kernel) {
  const double scale = static_cast<double>(in_size) / out_size;
  const double filter_scale = std::max(scale, 1.0);
  const double support = kernel == ResampleKernel::kBilinear ? 1.0 : 2.0;
  const double radius = support * filter_scale;
  const auto kfn = kernel == ResampleKernel::kBilinear ? bilinear_kernel : bicubic_kernel;

  AxisWeights table;
  table.start.resize(out_size);
  table.weights.resize(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double center = (i + 0.5) * scale - 0.5;
    int jmin = static_cast<int>(std::floor(center - radius + 1e-12)) + 1;
    int jmax = static_cast<int>(std::floor(center + radius - 1e-12));
    jmin = std::max(jmin, -(in_size - 1));
    jmax = std::min(jmax, 2 * in_size - 2);
    std::vector<double> w(static_cast<std::size_t>(jmax - jmin + 1), 0.0);
    double sum = 0.0;
    for (int j = jmin; j <= jmax; ++j) {
      const double k = kfn((j - center) / filter_scale);
      w[static_cast<std::size_t>(j - jmin)] = k;
      sum += k;
    }
    for (double& v : w) v /= sum;
    table.start[i] = jmin;
    table.weights[i] = std::move(w);
  }
  return table;
}

// Reflect-free edge handling: out-of-range taps read the nearest edge pixel.
inline int clamp_index(int j, int n) { return std::clamp(j, 0, n - 1); }

ImageBuffer resample(const ImageBuffer& img, int out_w, int out_h, ResampleKernel kernel) {
  constexpr int kC = ImageBuffer::kChannels;
  const int in_w = img.width();
  const int in_h = img.height();

  if (kernel == ResampleKernel::kNearest) {
    ImageBuffer out(out_w, out_h);
    const double sx = static_cast<double>(in_w) / out_w;
    const double sy = static_cast<double>(in_h) / out_h;
    for (int y = 0; y < out_h; ++y) {
      const int src_y = clamp_index(static_cast<int>(std::floor((y + 0.5) * sy)), in_h);
      for (int x = 0; x < out_w; ++x) {
        const int src_x = clamp_index(static_cast<int>(std::floor((x + 0.5) * sx)), in_w);
        for (int c = 0; c < kC; ++c) out.at(x, y, c) = img.at(src_x, src_y, c);
      }
    }
    return out;
  }

  const AxisWeights wx = build_weights(in_w, out_w, kernel);
  const AxisWeights wy = build_weights(in_h, out_h, kernel);

  // Horizontal pass into a double buffer, then vertical pass.
  std::vector<double> mid(static_cast<std::size_t>(out_w) * in_h * kC);
  for (int y = 0; y < in_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const auto& w = wx.weights[x];
      const int start = wx.start[x];
      double acc[kC] = {0.0, 0.0, 0.0};
      for (std::size_t t = 0; t < w.size(); ++t) {
        const int sx = clamp_index(start + static_cast<int>(t), in_w);
        for (int c = 0; c < kC; ++c) acc[c] += w[t] * img.at(sx, y, c);
      }
      for (int c = 0; c < kC; ++c) {
        mid[(static_cast<std::size_t>(y) * out_w + x) * kC + c] = acc[c];
      }
    }
  }

  ImageBuffer out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const auto& w = wy.weights[y];
    const int start = wy.start[y];
    for (int x = 0; x < out_w; ++x) {
      double acc[kC] = {0.0, 0.0, 0.0};
      for (std::size_t t = 0; t < w.size(); ++t) {
        const int sy = clamp_index(start + static_cast<int>(t), in_h);
        for (int c = 0; c < kC; ++c) {
          acc[c] += w[t] * mid[(static_cast<std::size_t>(sy) * out_w + x) * kC + c];
        }
      }
      for (int c = 0; c < kC; ++c) out.at(x, y, c) = quantize_intensity(acc[c]);
    }
  }
  return out;
}

}  // namespace

std::string to_string(ResampleKernel k) {
  switch (k) {
    case ResampleKernel::kNearest: return "nearest";
    case ResampleKernel::kBilinear: return "bilinear";
    case ResampleKernel::kBicubic: return "bicubic";
  }
  return "bicubic";
}

ResampleKernel kernel_from_string(const std::string& name) {
  if (name == "nearest") return ResampleKernel::kNearest;
  if (name == "bilinear") return ResampleKernel::kBilinear;
  if (name == "bicubic") return ResampleKernel::kBicubic;
  throw InvalidConfig("unknown resample kernel '" + name + "'");
}

ImageBuffer downscale(const ImageBuffer& img, int factor, ResampleKernel kernel) {
  if (factor < 1) throw InvalidFactor("downscale factor must be >= 1, got " + std::to_string(factor));
  if (factor == 1) return img;
  const int out_w = img.width() / factor;
  const int out_h = img.height() / factor;
  if (out_w < 1 || out_h < 1) {
    throw InvalidDimensions("downscale by " + std::to_string(factor) + " empties a " +
                            std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
  }
  return resample(img, out_w, out_h, kernel);
}

ImageBuffer resize_to(const ImageBuffer& img, int width, int height, ResampleKernel kernel) {
  if (width < 1 || height < 1) {
    throw InvalidDimensions("resize target must be positive, got " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
  if (width == img.width() && height == img.height() && kernel == ResampleKernel::kNearest) {
    return img;
  }
  return resample(img, width, height, kernel);
}

}  // namespace srbench::imaging
