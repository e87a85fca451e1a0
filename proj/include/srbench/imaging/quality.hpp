#pragma once

#include <string>
#include <vector>

#include "srbench/core/image.hpp"

namespace srbench::imaging {

/// Mean squared error over all pixels and channels, in 8-bit intensity units.
double mse(const ImageBuffer& a, const ImageBuffer& b);

/// 10*log10(peak^2 / mse); +infinity when the images are identical.
double psnr(const ImageBuffer& a, const ImageBuffer& b, double peak = 255.0);

struct QualityEntry {
  std::string id;
  double psnr_db = 0.0;
  double mse = 0.0;
};

/// Per-image PSNR/MSE plus aggregates. Aggregate PSNR is the arithmetic mean
/// of per-image PSNR values, excluding infinite entries (their count is
/// reported separately); aggregate MSE is the mean of per-image MSE.
struct QualityReport {
  double psnr_db = 0.0;
  double mse = 0.0;
  int infinite_psnr_count = 0;
  std::vector<QualityEntry> per_image;
};

struct ImagePairRef {
  std::string id;
  const ImageBuffer* restored = nullptr;
  const ImageBuffer* reference = nullptr;
};

QualityReport quality_report(const std::vector<ImagePairRef>& pairs, double peak = 255.0);

/// Convenience aggregation from already-computed per-image entries.
QualityReport aggregate_quality(std::vector<QualityEntry> entries);

}  // namespace srbench::imaging
