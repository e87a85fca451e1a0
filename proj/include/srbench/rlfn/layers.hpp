#pragma once

#include "srbench/rlfn/tensor.hpp"

namespace srbench::rlfn {

/// 2-D convolution with square kernel, zero padding. Parameters live in the
/// layer; activations and gradients flow through explicit arguments so one
/// layer instance is safe to use from many forward passes at once.
struct Conv2d {
  int in_ch = 0;
  int out_ch = 0;
  int ksize = 3;
  int stride = 1;
  int pad = 1;
  Tensor w;  // [out_ch, in_ch, k, k]
  Tensor b;  // [out_ch]

  Conv2d() = default;
  Conv2d(int in_channels, int out_channels, int kernel, int stride_ = 1, int pad_ = 0);

  int out_extent(int in_extent) const noexcept {
    return (in_extent + 2 * pad - ksize) / stride + 1;
  }

  Tensor forward(const Tensor& x) const;

  /// Computes the input gradient and accumulates parameter gradients into
  /// gw/gb (which must match w/b shapes).
  Tensor backward(const Tensor& x, const Tensor& gy, Tensor& gw, Tensor& gb) const;
};

// Smooth activation (x * sigmoid(x)); C-infinity, so finite-difference
// gradient checks are well posed everywhere.
Tensor silu(const Tensor& x);
Tensor silu_backward(const Tensor& x, const Tensor& gy);

Tensor sigmoid(const Tensor& x);
/// Gradient through sigmoid given its *output* and the downstream gradient.
Tensor sigmoid_backward_from_output(const Tensor& y, const Tensor& gy);

Tensor elementwise_mul(const Tensor& a, const Tensor& b);

/// Bilinear resize of a [C,H,W] tensor to (out_h, out_w); used by the
/// attention unit to return pooled maps to full resolution.
Tensor bilinear_resize(const Tensor& x, int out_h, int out_w);
Tensor bilinear_resize_backward(const Tensor& gy, int in_h, int in_w);

/// Rearranges [C*s^2, H, W] into [C, s*H, s*W]; channel c*s^2 + dy*s + dx
/// lands on output pixel (y*s+dy, x*s+dx) of channel c.
Tensor pixel_shuffle(const Tensor& x, int scale);
Tensor pixel_shuffle_backward(const Tensor& gy, int scale);

}  // namespace srbench::rlfn
