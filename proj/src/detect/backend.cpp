#include "srbench/detect/backend.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <tuple>

#include "srbench/core/geometry.hpp"
#include "srbench/core/rng.hpp"
#include "srbench/detect/interchange.hpp"
#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"

namespace srbench::detect {

std::string to_string(BackendKind k) {
  switch (k) {
    case BackendKind::kOracle: return "oracle";
    case BackendKind::kRandom: return "random";
    case BackendKind::kNull: return "null";
    case BackendKind::kExternalModel: return "external";
  }
  return "null";
}

BackendKind backend_kind_from_string(const std::string& name) {
  if (name == "oracle") return BackendKind::kOracle;
  if (name == "random") return BackendKind::kRandom;
  if (name == "null") return BackendKind::kNull;
  if (name == "external") return BackendKind::kExternalModel;
  throw InvalidConfig("unknown detector backend '" + name + "'");
}

void OracleNoise::validate() const {
  if (drop_prob < 0.0 || drop_prob > 1.0) throw BackendMisconfigured("drop_prob outside [0,1]");
  if (center_jitter_std < 0.0 || size_jitter_std < 0.0) {
    throw BackendMisconfigured("jitter stddevs must be >= 0");
  }
  if (false_positive_rate < 0.0) throw BackendMisconfigured("false_positive_rate must be >= 0");
  if (score_slope < 0.0) throw BackendMisconfigured("score map must be monotone (slope >= 0)");
}

void DetectorBackend::validate() const {
  if (score_threshold < 0.0 || score_threshold > 1.0) {
    throw BackendMisconfigured("score_threshold outside [0,1]");
  }
  if (max_detections < 1) throw BackendMisconfigured("max_detections must be >= 1");
  oracle.validate();
  if (kind == BackendKind::kRandom && random.max_boxes < 0) {
    throw BackendMisconfigured("random.max_boxes must be >= 0");
  }
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void finalize(std::vector<Detection>& dets, const ImageBuffer& image,
              const DetectorBackend& backend) {
  std::vector<Detection> kept;
  kept.reserve(dets.size());
  for (auto& d : dets) {
    d.box = clip_box(d.box, image.width(), image.height());
    if (d.score >= backend.score_threshold) kept.push_back(d);
  }
  std::sort(kept.begin(), kept.end(), [](const Detection& a, const Detection& b) {
    return std::tie(b.score, a.box.x, a.box.y) < std::tie(a.score, b.box.x, b.box.y);
  });
  if (static_cast<int>(kept.size()) > backend.max_detections) {
    kept.resize(static_cast<std::size_t>(backend.max_detections));
  }
  dets = std::move(kept);
}

std::vector<Detection> oracle_detect(const DetectorBackend& backend, const ImageBuffer& image,
                                     std::span<const GroundTruthBox> gt,
                                     std::uint64_t frame_seed) {
  const OracleNoise& noise = backend.oracle;
  SplitMix64 rng(derive_stream(frame_seed, "oracle"));
  std::vector<Detection> dets;
  dets.reserve(gt.size());

  for (const auto& g : gt) {
    // Fixed draw count per box keeps the stream aligned across noise configs.
    const double u_drop = rng.uniform();
    const double dx = rng.normal();
    const double dy = rng.normal();
    const double dw = rng.normal();
    const double dh = rng.normal();
    if (u_drop < noise.drop_prob) continue;

    BoundingBox box = g.box;
    const double cx = box.x + box.w / 2.0 + dx * noise.center_jitter_std * box.w;
    const double cy = box.y + box.h / 2.0 + dy * noise.center_jitter_std * box.h;
    const double w = std::max(0.0, box.w * (1.0 + dw * noise.size_jitter_std));
    const double h = std::max(0.0, box.h * (1.0 + dh * noise.size_jitter_std));
    box = BoundingBox{cx - w / 2.0, cy - h / 2.0, w, h};
    box = clip_box(box, image.width(), image.height());

    Detection d;
    d.box = box;
    d.cls = g.cls;
    d.score = clamp01(noise.score_offset + noise.score_slope * iou(box, g.box));
    dets.push_back(d);
  }

  const int false_positives = rng.poisson(noise.false_positive_rate);
  for (int i = 0; i < false_positives; ++i) {
    const double w = rng.uniform(0.02, 0.2) * image.width();
    const double h = rng.uniform(0.02, 0.2) * image.height();
    const double x = rng.uniform() * (image.width() - w);
    const double y = rng.uniform() * (image.height() - h);
    const ObjectClass cls = rng.uniform() < 0.5 ? ObjectClass::kBall : ObjectClass::kPerson;
    const BoundingBox box{x, y, w, h};
    double best = 0.0;
    for (const auto& g : gt) {
      if (g.cls == cls) best = std::max(best, iou(box, g.box));
    }
    dets.push_back({box, cls, clamp01(noise.score_offset + noise.score_slope * best)});
  }
  return dets;
}

std::vector<Detection> random_detect(const DetectorBackend& backend, const ImageBuffer& image,
                                     std::uint64_t frame_seed) {
  SplitMix64 rng(derive_stream(frame_seed, "random"));
  const int count = backend.random.max_boxes > 0 ? rng.uniform_int(0, backend.random.max_boxes) : 0;
  std::vector<Detection> dets;
  dets.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double w = rng.uniform(0.02, 0.3) * image.width();
    const double h = rng.uniform(0.02, 0.3) * image.height();
    const double x = rng.uniform() * (image.width() - w);
    const double y = rng.uniform() * (image.height() - h);
    const ObjectClass cls = rng.uniform() < 0.5 ? ObjectClass::kBall : ObjectClass::kPerson;
    dets.push_back({BoundingBox{x, y, w, h}, cls, rng.uniform()});
  }
  return dets;
}

std::vector<Detection> external_detect(const DetectorBackend& backend, const ImageBuffer& image) {
  std::string command = backend.external.command;
  if (command.empty()) {
    if (const char* env = std::getenv("SRBENCH_DETECTOR_CMD")) command = env;
  }
  if (command.empty()) {
    throw ModelAssetMissing(
        "external backend needs a command (config or SRBENCH_DETECTOR_CMD)");
  }

  // Hand the frame to the external runtime via a temporary file.
  const auto tmp = std::filesystem::temp_directory_path() /
                   ("srbench_frame_" + std::to_string(::getpid()) + ".ppm");
  imaging::save_image(image, tmp);
  const std::string placeholder = "{image}";
  std::string resolved = command;
  if (const auto pos = resolved.find(placeholder); pos != std::string::npos) {
    resolved.replace(pos, placeholder.size(), tmp.string());
  } else {
    resolved += " " + tmp.string();
  }

  FILE* pipe = ::popen(resolved.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(tmp);
    throw BackendMisconfigured("cannot launch external detector: " + resolved);
  }
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = ::pclose(pipe);
  std::filesystem::remove(tmp);
  if (status != 0) {
    throw BackendMisconfigured("external detector exited with status " + std::to_string(status));
  }

  std::vector<Detection> dets;
  try {
    for (const auto& rec : parse_interchange_records(output)) {
      const auto it = backend.external.label_map.find(rec.label);
      if (it == backend.external.label_map.end()) continue;  // unmapped classes are dropped
      dets.push_back({rec.box, it->second, rec.score});
    }
  } catch (const Error& e) {
    throw BackendMisconfigured(std::string("unparseable external detector output: ") + e.what());
  }
  return dets;
}

}  // namespace

std::vector<Detection> detect_seeded(const DetectorBackend& backend, const ImageBuffer& image,
                                     std::span<const GroundTruthBox> gt,
                                     std::uint64_t frame_seed) {
  backend.validate();
  std::vector<Detection> dets;
  switch (backend.kind) {
    case BackendKind::kNull:
      break;
    case BackendKind::kOracle:
      dets = oracle_detect(backend, image, gt, frame_seed);
      break;
    case BackendKind::kRandom:
      dets = random_detect(backend, image, frame_seed);
      break;
    case BackendKind::kExternalModel:
      dets = external_detect(backend, image);
      break;
  }
  finalize(dets, image, backend);
  return dets;
}

std::vector<Detection> detect(const DetectorBackend& backend, const ImageBuffer& image,
                              std::span<const GroundTruthBox> gt) {
  if (backend.kind == BackendKind::kOracle && gt.empty()) {
    // An oracle without ground truth can only ever return false positives;
    // treat a missing gt argument as a misuse.
    if (backend.oracle.false_positive_rate == 0.0) {
      throw BackendMisconfigured("oracle backend needs ground truth");
    }
  }
  const std::uint64_t frame_seed =
      mix_stream(backend.seed, gt.empty() ? 0 : static_cast<std::uint64_t>(gt[0].frame_id));
  return detect_seeded(backend, image, gt, frame_seed);
}

std::vector<Detection> detections_to_reference_frame(std::span<const Detection> dets,
                                                     std::pair<int, int> from_shape,
                                                     std::pair<int, int> to_shape) {
  if (from_shape.first < 1 || from_shape.second < 1 || to_shape.first < 1 ||
      to_shape.second < 1) {
    throw InvalidShape("shapes must be positive");
  }
  const double sx = static_cast<double>(to_shape.first) / from_shape.first;
  const double sy = static_cast<double>(to_shape.second) / from_shape.second;
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (const auto& d : dets) {
    out.push_back({scale_box(d.box, sx, sy), d.cls, d.score});
  }
  return out;
}

}  // namespace srbench::detect
