#include "srbench/rlfn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srbench/core/rng.hpp"
#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"
#include "srbench/imaging/quality.hpp"
#include "srbench/rlfn/checkpoint.hpp"

namespace srbench::rlfn {
namespace {

ImageBuffer flip_horizontal(const ImageBuffer& img) {
  ImageBuffer out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(img.width() - 1 - x, y, c);
    }
  }
  return out;
}

ImageBuffer rotate90(const ImageBuffer& img) {
  ImageBuffer out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) out.at(img.height() - 1 - y, x, c) = img.at(x, y, c);
    }
  }
  return out;
}

// Charbonnier-smoothed L1 in [0,1] space; writes d(loss)/d(pred) into grad.
double l1_loss_and_grad(const Tensor& pred, const Tensor& target, double eps, Tensor& grad) {
  const double n = static_cast<double>(pred.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < pred.v.size(); ++i) {
    const double d = pred.v[i] - target.v[i];
    const double root = std::sqrt(d * d + eps * eps);
    loss += root - eps;
    grad.v[i] = d / (root * n);
  }
  return loss / n;
}

struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  int t = 0;
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;
};

}  // namespace

HrImageSet HrImageSet::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw MissingFile("image directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ImageBuffer> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(imaging::load_image(f));
  return HrImageSet(std::move(images));
}

double validation_psnr(const SRModel& model, const HrImageSet& images) {
  const int s = model.config.scale;
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& hr = images.image(i);
    const int cw = hr.width() / s * s;
    const int ch = hr.height() / s * s;
    const ImageBuffer ref = hr.crop(0, 0, cw, ch);
    const ImageBuffer lr = imaging::downscale(ref, s, imaging::ResampleKernel::kBicubic);
    const ImageBuffer restored = sr_forward(model, lr);
    const double p = imaging::psnr(restored, ref);
    if (std::isfinite(p)) {
      sum += p;
      ++count;
    }
  }
  return count > 0 ? sum / count : std::numeric_limits<double>::infinity();
}

double bicubic_baseline_psnr(const HrImageSet& images, int scale) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& hr = images.image(i);
    const int cw = hr.width() / scale * scale;
    const int ch = hr.height() / scale * scale;
    const ImageBuffer ref = hr.crop(0, 0, cw, ch);
    const ImageBuffer lr = imaging::downscale(ref, scale, imaging::ResampleKernel::kBicubic);
    const ImageBuffer up = imaging::resize_to(lr, cw, ch, imaging::ResampleKernel::kBicubic);
    const double p = imaging::psnr(up, ref);
    if (std::isfinite(p)) {
      sum += p;
      ++count;
    }
  }
  return count > 0 ? sum / count : std::numeric_limits<double>::infinity();
}

TrainHistory train(SRModel& model, const HrImageSet& hr_images, const TrainConfig& cfg,
                   const HrImageSet* validation) {
  cfg.validate();
  if (hr_images.size() == 0) throw EmptyDataset("no training images");

  const int s = model.config.scale;
  const int hr_patch = cfg.patch_size * s;
  for (std::size_t i = 0; i < hr_images.size(); ++i) {
    const auto& img = hr_images.image(i);
    if (img.width() < hr_patch || img.height() < hr_patch) {
      throw PatchLargerThanImage("image " + std::to_string(i) + " (" +
                                 std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                                 ") smaller than HR patch " + std::to_string(hr_patch));
    }
  }

  auto params = model.parameters();
  AdamState adam;
  for (const auto& ref : params) {
    adam.m.push_back(Tensor::zeros(ref.tensor->shape));
    adam.v.push_back(Tensor::zeros(ref.tensor->shape));
  }
  GradBuffer grads = GradBuffer::zeros_like(model);

  TrainHistory history;
  history.steps.reserve(static_cast<std::size_t>(cfg.total_steps));

  for (int step = 0; step < cfg.total_steps; ++step) {
    SplitMix64 rng(derive_stream(cfg.seed, "train-step", static_cast<std::uint64_t>(step)));
    grads.zero();
    double loss_sum = 0.0;

    for (int b = 0; b < cfg.batch_size; ++b) {
      const auto& hr = hr_images.image(static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(hr_images.size()) - 1)));
      const int x0 = rng.uniform_int(0, hr.width() - hr_patch);
      const int y0 = rng.uniform_int(0, hr.height() - hr_patch);
      ImageBuffer crop = hr.crop(x0, y0, hr_patch, hr_patch);
      if (cfg.augment_flips && rng.uniform() < 0.5) crop = flip_horizontal(crop);
      if (cfg.augment_rot90) {
        const int quarter_turns = rng.uniform_int(0, 3);
        for (int r = 0; r < quarter_turns; ++r) crop = rotate90(crop);
      }
      const ImageBuffer lr = imaging::downscale(crop, s, imaging::ResampleKernel::kBicubic);

      const Tensor input = image_to_tensor(lr);
      const Tensor target = image_to_tensor(crop);
      ForwardTrace trace;
      const Tensor pred = net_forward(model, input, &trace);
      Tensor grad_pred = Tensor::zeros(pred.shape);
      loss_sum += l1_loss_and_grad(pred, target, cfg.charbonnier_eps, grad_pred);
      net_backward(model, trace, grad_pred, grads);
    }

    const double loss = loss_sum / cfg.batch_size;
    if (!std::isfinite(loss)) {
      throw NonFiniteLoss("loss became non-finite at step " + std::to_string(step) +
                          " (lr=" + std::to_string(lr_at(step, cfg)) + ")");
    }

    const double lr = lr_at(step, cfg);
    adam.t += 1;
    const double bc1 = 1.0 - std::pow(AdamState::kBeta1, adam.t);
    const double bc2 = 1.0 - std::pow(AdamState::kBeta2, adam.t);
    for (std::size_t p = 0; p < params.size(); ++p) {
      Tensor& theta = *params[p].tensor;
      Tensor& m = adam.m[p];
      Tensor& v = adam.v[p];
      const Tensor& g = grads.grads[p];
      for (std::size_t i = 0; i < theta.v.size(); ++i) {
        const double gi = g.v[i] / cfg.batch_size;
        m.v[i] = AdamState::kBeta1 * m.v[i] + (1.0 - AdamState::kBeta1) * gi;
        v.v[i] = AdamState::kBeta2 * v.v[i] + (1.0 - AdamState::kBeta2) * gi * gi;
        const double mhat = m.v[i] / bc1;
        const double vhat = v.v[i] / bc2;
        theta.v[i] -= lr * mhat / (std::sqrt(vhat) + AdamState::kEpsilon);
      }
      theta.round_to_f32();
      if (!theta.all_finite()) {
        throw NonFiniteLoss("parameter '" + params[p].name + "' became non-finite at step " +
                            std::to_string(step));
      }
    }

    history.steps.push_back({step, lr, loss});

    if (validation && cfg.validation_interval > 0 &&
        ((step + 1) % cfg.validation_interval == 0 || step + 1 == cfg.total_steps)) {
      history.validations.push_back({step, validation_psnr(model, *validation)});
    }
    if (cfg.checkpoint_interval > 0 && !cfg.checkpoint_dir.empty() &&
        ((step + 1) % cfg.checkpoint_interval == 0 || step + 1 == cfg.total_steps)) {
      std::filesystem::create_directories(cfg.checkpoint_dir);
      save_checkpoint(model, cfg.checkpoint_dir /
                                 ("step_" + std::to_string(step + 1) + ".srdb"));
    }
  }
  return history;
}

}  // namespace srbench::rlfn
