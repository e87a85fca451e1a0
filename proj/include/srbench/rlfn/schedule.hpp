#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace srbench::rlfn {

struct TrainConfig {
  int batch_size = 32;
  int total_steps = 15000;
  double lr_floor = 1e-5;
  double lr_peak = 1e-2;
  double warmup_fraction = 0.05;
  int patch_size = 64;  // in low-resolution space
  enum class Loss { kL1 } loss = Loss::kL1;
  double charbonnier_eps = 1e-3;  // kink smoothing for the L1 loss, in [0,1] units
  std::uint64_t seed = 0;
  bool augment_flips = true;
  bool augment_rot90 = true;

  int checkpoint_interval = 0;  // 0 disables periodic checkpoints
  std::filesystem::path checkpoint_dir;
  int validation_interval = 0;  // 0 disables validation PSNR records

  void validate() const;  // InvalidConfig
  int warmup_steps() const noexcept;
};

/// Learning rate at a step: linear warmup lr_floor -> lr_peak over
/// warmup_fraction * total_steps, then cosine decay back to lr_floor.
/// Steps outside [0, total_steps] raise StepOutOfRange.
double lr_at(int step, const TrainConfig& cfg);

}  // namespace srbench::rlfn
