#include "srbench/synth/textures.hpp"

#include <cmath>

#include "srbench/core/rng.hpp"

namespace srbench::synth {

ImageBuffer texture_image(int width, int height, std::uint64_t seed) {
  SplitMix64 rng(derive_stream(seed, "texture"));

  // Base gradient per channel.
  double base[3], gx[3], gy[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = rng.uniform(60.0, 200.0);
    gx[c] = rng.uniform(-60.0, 60.0) / width;
    gy[c] = rng.uniform(-60.0, 60.0) / height;
  }

  struct Grating {
    double fx, fy, phase, amp;
  };
  std::vector<Grating> gratings;
  const int n_gratings = rng.uniform_int(2, 4);
  for (int i = 0; i < n_gratings; ++i) {
    const double angle = rng.uniform(0.0, 3.14159265358979323846);
    const double freq = rng.uniform(0.05, 0.45);
    gratings.push_back({freq * std::cos(angle), freq * std::sin(angle),
                        rng.uniform(0.0, 6.283185307179586), rng.uniform(8.0, 30.0)});
  }

  struct Shape {
    double x0, y0, x1, y1, cx, cy, r2;
    bool disk;
    double color[3];
  };
  std::vector<Shape> shapes;
  const int n_shapes = rng.uniform_int(4, 9);
  for (int i = 0; i < n_shapes; ++i) {
    Shape s{};
    s.disk = rng.uniform() < 0.5;
    const double w = rng.uniform(0.08, 0.35) * width;
    const double h = rng.uniform(0.08, 0.35) * height;
    s.x0 = rng.uniform() * (width - w);
    s.y0 = rng.uniform() * (height - h);
    s.x1 = s.x0 + w;
    s.y1 = s.y0 + h;
    s.cx = (s.x0 + s.x1) / 2.0;
    s.cy = (s.y0 + s.y1) / 2.0;
    const double r = std::min(w, h) / 2.0;
    s.r2 = r * r;
    for (int c = 0; c < 3; ++c) s.color[c] = rng.uniform(10.0, 245.0);
    shapes.push_back(s);
  }

  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double px[3];
      for (int c = 0; c < 3; ++c) px[c] = base[c] + gx[c] * x * 1.0 + gy[c] * y * 1.0;
      for (const auto& g : gratings) {
        const double v = g.amp * std::sin(g.fx * x + g.fy * y + g.phase);
        for (int c = 0; c < 3; ++c) px[c] += v;
      }
      for (const auto& s : shapes) {
        const bool inside = s.disk
                                ? (x - s.cx) * (x - s.cx) + (y - s.cy) * (y - s.cy) <= s.r2
                                : (x >= s.x0 && x < s.x1 && y >= s.y0 && y < s.y1);
        if (inside) {
          for (int c = 0; c < 3; ++c) px[c] = 0.35 * px[c] + 0.65 * s.color[c];
        }
      }
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = quantize_intensity(px[c]);
    }
  }
  return img;
}

std::vector<ImageBuffer> texture_set(int count, int width, int height, std::uint64_t seed) {
  std::vector<ImageBuffer> images;
  images.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    images.push_back(texture_image(width, height, mix_stream(seed, static_cast<std::uint64_t>(i))));
  }
  return images;
}

}  // namespace srbench::synth
