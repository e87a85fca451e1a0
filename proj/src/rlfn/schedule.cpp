#include "srbench/rlfn/schedule.hpp"

#include <cmath>
#include <string>

#include "srbench/errors.hpp"

namespace srbench::rlfn {

void TrainConfig::validate() const {
  if (batch_size < 1) throw InvalidConfig("batch_size must be >= 1");
  if (total_steps < 1) throw InvalidConfig("total_steps must be >= 1");
  if (!(lr_floor > 0.0) || !(lr_floor <= lr_peak)) {
    throw InvalidConfig("need 0 < lr_floor <= lr_peak");
  }
  if (!(warmup_fraction > 0.0 && warmup_fraction < 1.0)) {
    throw InvalidConfig("warmup_fraction must lie in (0,1)");
  }
  if (patch_size < 8) throw InvalidConfig("patch_size must be >= 8");
  if (charbonnier_eps <= 0.0) throw InvalidConfig("charbonnier_eps must be positive");
}

int TrainConfig::warmup_steps() const noexcept {
  const int w = static_cast<int>(std::llround(warmup_fraction * total_steps));
  return std::max(1, std::min(w, total_steps - 1));
}

double lr_at(int step, const TrainConfig& cfg) {
  if (step < 0 || step > cfg.total_steps) {
    throw StepOutOfRange("step " + std::to_string(step) + " outside [0," +
                         std::to_string(cfg.total_steps) + "]");
  }
  const int warmup = cfg.warmup_steps();
  if (step <= warmup) {
    const double t = static_cast<double>(step) / warmup;
    return cfg.lr_floor + (cfg.lr_peak - cfg.lr_floor) * t;
  }
  const double t = static_cast<double>(step - warmup) / (cfg.total_steps - warmup);
  constexpr double kPi = 3.14159265358979323846;
  return cfg.lr_floor + (cfg.lr_peak - cfg.lr_floor) * 0.5 * (1.0 + std::cos(kPi * t));
}

}  // namespace srbench::rlfn
