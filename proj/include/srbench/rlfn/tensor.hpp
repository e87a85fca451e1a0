#pragma once

#include <cstddef>
#include <vector>

namespace srbench::rlfn {

/// Dense row-major tensor of doubles. Feature maps are [channels, height,
/// width]; convolution weights are [out_ch, in_ch, k, k]; biases are [n].
struct Tensor {
  std::vector<int> shape;
  std::vector<double> v;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);

  static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }

  std::size_t size() const noexcept { return v.size(); }
  int dim(int i) const noexcept { return shape[static_cast<std::size_t>(i)]; }

  double* data() noexcept { return v.data(); }
  const double* data() const noexcept { return v.data(); }

  // Feature-map accessors ([C,H,W]).
  double& at(int c, int y, int x) noexcept {
    return v[(static_cast<std::size_t>(c) * dim(1) + y) * dim(2) + x];
  }
  double at(int c, int y, int x) const noexcept {
    return v[(static_cast<std::size_t>(c) * dim(1) + y) * dim(2) + x];
  }

  bool same_shape(const Tensor& other) const noexcept { return shape == other.shape; }

  Tensor& operator+=(const Tensor& other);
  void zero();
  bool all_finite() const noexcept;

  /// Snaps every element onto the float32 grid. Model parameters live on this
  /// grid so checkpoints (stored as float32) round-trip bit-exactly.
  void round_to_f32();
};

Tensor add(const Tensor& a, const Tensor& b);

}  // namespace srbench::rlfn
