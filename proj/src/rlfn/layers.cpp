#include "srbench/rlfn/layers.hpp"

#include <algorithm>
#include <cmath>

#include "srbench/errors.hpp"

namespace srbench::rlfn {
namespace {

inline double* plane(Tensor& t, int c) {
  return t.data() + static_cast<std::size_t>(c) * t.dim(1) * t.dim(2);
}
inline const double* plane(const Tensor& t, int c) {
  return t.data() + static_cast<std::size_t>(c) * t.dim(1) * t.dim(2);
}

}  // namespace

Conv2d::Conv2d(int in_channels, int out_channels, int kernel, int stride_, int pad_)
    : in_ch(in_channels),
      out_ch(out_channels),
      ksize(kernel),
      stride(stride_),
      pad(pad_),
      w({out_channels, in_channels, kernel, kernel}),
      b({out_channels}) {}

Tensor Conv2d::forward(const Tensor& x) const {
  const int h = x.dim(1);
  const int wdt = x.dim(2);
  const int oh = out_extent(h);
  const int ow = out_extent(wdt);
  Tensor y({out_ch, oh, ow});

  for (int co = 0; co < out_ch; ++co) {
    double* yp = plane(y, co);
    const double bias = b.v[static_cast<std::size_t>(co)];
    std::fill(yp, yp + static_cast<std::size_t>(oh) * ow, bias);
    for (int ci = 0; ci < in_ch; ++ci) {
      const double* xp = plane(x, ci);
      const double* wp =
          w.data() + (static_cast<std::size_t>(co) * in_ch + ci) * ksize * ksize;
      for (int ky = 0; ky < ksize; ++ky) {
        for (int kx = 0; kx < ksize; ++kx) {
          const double wv = wp[ky * ksize + kx];
          // Valid output-column range keeps ix = ox*stride - pad + kx inside.
          const int shift = kx - pad;
          int ox0 = 0;
          while (ox0 < ow && ox0 * stride + shift < 0) ++ox0;
          int ox1 = ow - 1;
          while (ox1 >= ox0 && ox1 * stride + shift >= wdt) --ox1;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * stride - pad + ky;
            if (iy < 0 || iy >= h) continue;
            double* yrow = yp + static_cast<std::size_t>(oy) * ow;
            const double* xrow = xp + static_cast<std::size_t>(iy) * wdt + shift;
            if (stride == 1) {
              for (int ox = ox0; ox <= ox1; ++ox) yrow[ox] += wv * xrow[ox];
            } else {
              for (int ox = ox0; ox <= ox1; ++ox) yrow[ox] += wv * xrow[ox * stride];
            }
          }
        }
      }
    }
  }
  return y;
}

Tensor Conv2d::backward(const Tensor& x, const Tensor& gy, Tensor& gw, Tensor& gb) const {
  const int h = x.dim(1);
  const int wdt = x.dim(2);
  const int oh = gy.dim(1);
  const int ow = gy.dim(2);
  Tensor gx({in_ch, h, wdt});

  for (int co = 0; co < out_ch; ++co) {
    const double* gyp = plane(gy, co);
    double bias_grad = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(oh) * ow; ++i) bias_grad += gyp[i];
    gb.v[static_cast<std::size_t>(co)] += bias_grad;

    for (int ci = 0; ci < in_ch; ++ci) {
      const double* xp = plane(x, ci);
      double* gxp = plane(gx, ci);
      const std::size_t wbase = (static_cast<std::size_t>(co) * in_ch + ci) * ksize * ksize;
      for (int ky = 0; ky < ksize; ++ky) {
        for (int kx = 0; kx < ksize; ++kx) {
          const double wv = w.v[wbase + ky * ksize + kx];
          const int shift = kx - pad;
          int ox0 = 0;
          while (ox0 < ow && ox0 * stride + shift < 0) ++ox0;
          int ox1 = ow - 1;
          while (ox1 >= ox0 && ox1 * stride + shift >= wdt) --ox1;
          double wgrad = 0.0;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * stride - pad + ky;
            if (iy < 0 || iy >= h) continue;
            const double* gyrow = gyp + static_cast<std::size_t>(oy) * ow;
            const double* xrow = xp + static_cast<std::size_t>(iy) * wdt + shift;
            double* gxrow = gxp + static_cast<std::size_t>(iy) * wdt + shift;
            if (stride == 1) {
              for (int ox = ox0; ox <= ox1; ++ox) {
                wgrad += gyrow[ox] * xrow[ox];
                gxrow[ox] += wv * gyrow[ox];
              }
            } else {
              for (int ox = ox0; ox <= ox1; ++ox) {
                wgrad += gyrow[ox] * xrow[ox * stride];
                gxrow[ox * stride] += wv * gyrow[ox];
              }
            }
          }
          gw.v[wbase + ky * ksize + kx] += wgrad;
        }
      }
    }
  }
  return gx;
}

Tensor silu(const Tensor& x) {
  Tensor y = x;
  for (double& v : y.v) {
    const double s = 1.0 / (1.0 + std::exp(-v));
    v = v * s;
  }
  return y;
}

Tensor silu_backward(const Tensor& x, const Tensor& gy) {
  Tensor gx = x;
  for (std::size_t i = 0; i < gx.v.size(); ++i) {
    const double v = x.v[i];
    const double s = 1.0 / (1.0 + std::exp(-v));
    gx.v[i] = gy.v[i] * (s * (1.0 + v * (1.0 - s)));
  }
  return gx;
}

Tensor sigmoid(const Tensor& x) {
  Tensor y = x;
  for (double& v : y.v) v = 1.0 / (1.0 + std::exp(-v));
  return y;
}

Tensor sigmoid_backward_from_output(const Tensor& y, const Tensor& gy) {
  Tensor gx = y;
  for (std::size_t i = 0; i < gx.v.size(); ++i) {
    gx.v[i] = gy.v[i] * y.v[i] * (1.0 - y.v[i]);
  }
  return gx;
}

Tensor elementwise_mul(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw InternalError("elementwise_mul shape mismatch");
  Tensor out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] *= b.v[i];
  return out;
}

namespace {

// Precomputed 1-D bilinear taps: out index -> (i0, i1, weight of i1).
struct LinearTaps {
  std::vector<int> i0, i1;
  std::vector<double> frac;
};

LinearTaps linear_taps(int in_size, int out_size) {
  LinearTaps taps;
  taps.i0.resize(out_size);
  taps.i1.resize(out_size);
  taps.frac.resize(out_size);
  const double scale = static_cast<double>(in_size) / out_size;
  for (int i = 0; i < out_size; ++i) {
    const double center = (i + 0.5) * scale - 0.5;
    const double clamped = std::clamp(center, 0.0, static_cast<double>(in_size - 1));
    const int lo = static_cast<int>(std::floor(clamped));
    taps.i0[i] = lo;
    taps.i1[i] = std::min(lo + 1, in_size - 1);
    taps.frac[i] = clamped - lo;
  }
  return taps;
}

}  // namespace

Tensor bilinear_resize(const Tensor& x, int out_h, int out_w) {
  const int c = x.dim(0);
  const int in_h = x.dim(1);
  const int in_w = x.dim(2);
  const LinearTaps ty = linear_taps(in_h, out_h);
  const LinearTaps tx = linear_taps(in_w, out_w);

  Tensor y({c, out_h, out_w});
  for (int ch = 0; ch < c; ++ch) {
    const double* xp = plane(x, ch);
    double* yp = plane(y, ch);
    for (int oy = 0; oy < out_h; ++oy) {
      const double* row0 = xp + static_cast<std::size_t>(ty.i0[oy]) * in_w;
      const double* row1 = xp + static_cast<std::size_t>(ty.i1[oy]) * in_w;
      const double fy = ty.frac[oy];
      double* yrow = yp + static_cast<std::size_t>(oy) * out_w;
      for (int ox = 0; ox < out_w; ++ox) {
        const double fx = tx.frac[ox];
        const double top = row0[tx.i0[ox]] * (1.0 - fx) + row0[tx.i1[ox]] * fx;
        const double bot = row1[tx.i0[ox]] * (1.0 - fx) + row1[tx.i1[ox]] * fx;
        yrow[ox] = top * (1.0 - fy) + bot * fy;
      }
    }
  }
  return y;
}

Tensor bilinear_resize_backward(const Tensor& gy, int in_h, int in_w) {
  const int c = gy.dim(0);
  const int out_h = gy.dim(1);
  const int out_w = gy.dim(2);
  const LinearTaps ty = linear_taps(in_h, out_h);
  const LinearTaps tx = linear_taps(in_w, out_w);

  Tensor gx({c, in_h, in_w});
  for (int ch = 0; ch < c; ++ch) {
    const double* gyp = plane(gy, ch);
    double* gxp = plane(gx, ch);
    for (int oy = 0; oy < out_h; ++oy) {
      const double fy = ty.frac[oy];
      double* row0 = gxp + static_cast<std::size_t>(ty.i0[oy]) * in_w;
      double* row1 = gxp + static_cast<std::size_t>(ty.i1[oy]) * in_w;
      const double* gyrow = gyp + static_cast<std::size_t>(oy) * out_w;
      for (int ox = 0; ox < out_w; ++ox) {
        const double fx = tx.frac[ox];
        const double g = gyrow[ox];
        row0[tx.i0[ox]] += g * (1.0 - fx) * (1.0 - fy);
        row0[tx.i1[ox]] += g * fx * (1.0 - fy);
        row1[tx.i0[ox]] += g * (1.0 - fx) * fy;
        row1[tx.i1[ox]] += g * fx * fy;
      }
    }
  }
  return gx;
}

Tensor pixel_shuffle(const Tensor& x, int scale) {
  const int cin = x.dim(0);
  const int h = x.dim(1);
  const int w = x.dim(2);
  const int s2 = scale * scale;
  if (cin % s2 != 0) throw InternalError("pixel_shuffle channel count not divisible by scale^2");
  const int cout = cin / s2;

  Tensor y({cout, h * scale, w * scale});
  for (int c = 0; c < cout; ++c) {
    for (int dy = 0; dy < scale; ++dy) {
      for (int dx = 0; dx < scale; ++dx) {
        const double* xp = plane(x, c * s2 + dy * scale + dx);
        for (int iy = 0; iy < h; ++iy) {
          const double* xrow = xp + static_cast<std::size_t>(iy) * w;
          double* yrow = plane(y, c) +
                         (static_cast<std::size_t>(iy) * scale + dy) * (w * scale) + dx;
          for (int ix = 0; ix < w; ++ix) yrow[static_cast<std::size_t>(ix) * scale] = xrow[ix];
        }
      }
    }
  }
  return y;
}

Tensor pixel_shuffle_backward(const Tensor& gy, int scale) {
  const int cout = gy.dim(0);
  const int sh = gy.dim(1);
  const int sw = gy.dim(2);
  const int h = sh / scale;
  const int w = sw / scale;
  const int s2 = scale * scale;

  Tensor gx({cout * s2, h, w});
  for (int c = 0; c < cout; ++c) {
    for (int dy = 0; dy < scale; ++dy) {
      for (int dx = 0; dx < scale; ++dx) {
        double* gxp = plane(gx, c * s2 + dy * scale + dx);
        for (int iy = 0; iy < h; ++iy) {
          double* gxrow = gxp + static_cast<std::size_t>(iy) * w;
          const double* gyrow = plane(gy, c) +
                                (static_cast<std::size_t>(iy) * scale + dy) * sw + dx;
          for (int ix = 0; ix < w; ++ix) gxrow[ix] = gyrow[static_cast<std::size_t>(ix) * scale];
        }
      }
    }
  }
  return gx;
}

}  // namespace srbench::rlfn
