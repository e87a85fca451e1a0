#pragma once

#include <filesystem>
#include <vector>

#include "srbench/imaging/resample.hpp"
#include "srbench/rlfn/model.hpp"
#include "srbench/rlfn/schedule.hpp"

namespace srbench::rlfn {

/// In-memory set of high-resolution training images.
class HrImageSet {
 public:
  HrImageSet() = default;
  explicit HrImageSet(std::vector<ImageBuffer> images) : images_(std::move(images)) {}

  /// Loads every .ppm file in a directory, sorted by filename.
  static HrImageSet from_directory(const std::filesystem::path& dir);

  std::size_t size() const noexcept { return images_.size(); }
  const ImageBuffer& image(std::size_t i) const { return images_[i]; }

 private:
  std::vector<ImageBuffer> images_;
};

struct TrainHistory {
  struct StepRecord {
    int step = 0;
    double learning_rate = 0.0;
    double loss = 0.0;
  };
  struct ValidationRecord {
    int step = 0;
    double psnr_db = 0.0;
  };
  std::vector<StepRecord> steps;
  std::vector<ValidationRecord> validations;
};

/// Trains in place with adaptive-moment optimization under lr_at. Each step
/// samples batch_size random HR crops, synthesizes LR crops with bicubic
/// downscale, applies flip/rotation augmentation, and minimizes the smoothed
/// L1 reconstruction loss. Deterministic for a fixed seed.
TrainHistory train(SRModel& model, const HrImageSet& hr_images, const TrainConfig& cfg,
                   const HrImageSet* validation = nullptr);

/// Mean PSNR of sr_forward against references over a held-out set, with
/// bicubic-downscaled inputs; references are cropped to scale multiples.
double validation_psnr(const SRModel& model, const HrImageSet& images);

/// Same protocol evaluated with plain bicubic upscaling; the control that
/// learned SR must beat.
double bicubic_baseline_psnr(const HrImageSet& images, int scale);

}  // namespace srbench::rlfn
