#pragma once

#include <string>

#include "srbench/core/image.hpp"

namespace srbench::imaging {

/// Interpolation kernels. Bicubic (Catmull-Rom) is the default degradation
/// and baseline-upscale kernel; when downscaling, kernels are widened by the
/// scale factor so the result is properly low-pass filtered.
enum class ResampleKernel { kNearest, kBilinear, kBicubic };

std::string to_string(ResampleKernel k);
ResampleKernel kernel_from_string(const std::string& name);

/// Divides both dimensions by an integer factor (floor). Factor 1 returns a
/// bit-identical copy.
ImageBuffer downscale(const ImageBuffer& img, int factor,
                      ResampleKernel kernel = ResampleKernel::kBicubic);

/// Resamples to exactly width x height; aspect ratio is not preserved.
ImageBuffer resize_to(const ImageBuffer& img, int width, int height,
                      ResampleKernel kernel = ResampleKernel::kBicubic);

}  // namespace srbench::imaging
