#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srbench/core/image.hpp"
#include "srbench/core/types.hpp"

namespace srbench::detect {

enum class BackendKind { kOracle, kRandom, kNull, kExternalModel };

std::string to_string(BackendKind k);
BackendKind backend_kind_from_string(const std::string& name);

/// Noise model for the hermetic oracle backend: jitter, drops and false
/// positives applied to ground truth, with a monotone IoU-to-score map.
struct OracleNoise {
  double center_jitter_std = 0.0;    // fraction of box width/height
  double size_jitter_std = 0.0;      // fraction of box width/height
  double drop_prob = 0.0;
  double false_positive_rate = 0.0;  // expected false boxes per frame (Poisson)
  double score_slope = 1.0;          // score = clamp01(offset + slope * iou)
  double score_offset = 0.0;

  void validate() const;
};

struct RandomParams {
  int max_boxes = 10;  // per frame; the realized count is uniform in [0, max]
};

/// Adapter for a real pretrained detector consumed as an external asset. The
/// command template receives "{image}" and must print interchange records
/// (`frame_id,label,score,x,y,w,h`) on stdout; labels go through label_map
/// and unmapped labels are discarded. When command is empty the
/// SRBENCH_DETECTOR_CMD environment variable supplies it.
struct ExternalModelParams {
  std::string command;
  std::map<std::string, ObjectClass> label_map = {
      {"ball", ObjectClass::kBall},
      {"sports ball", ObjectClass::kBall},
      {"person", ObjectClass::kPerson},
  };
};

struct DetectorBackend {
  BackendKind kind = BackendKind::kNull;
  double score_threshold = 0.05;
  int max_detections = 100;
  std::uint64_t seed = 0;
  OracleNoise oracle;
  RandomParams random;
  ExternalModelParams external;

  void validate() const;  // BackendMisconfigured
};

/// Runs one backend on one image. Synthetic backends derive their stream from
/// the backend seed and the frame id of the supplied ground truth, so results
/// replay bit-exactly. Output is clipped to the image, filtered by
/// score_threshold, sorted by descending score (ties by box x then y) and
/// truncated to max_detections.
std::vector<Detection> detect(const DetectorBackend& backend, const ImageBuffer& image,
                              std::span<const GroundTruthBox> gt = {});

/// Same, with an explicit stream id; the pipeline passes hash(seed, sequence,
/// frame) so parallel and serial runs agree.
std::vector<Detection> detect_seeded(const DetectorBackend& backend, const ImageBuffer& image,
                                     std::span<const GroundTruthBox> gt,
                                     std::uint64_t frame_seed);

/// Rescales detections between image shapes; scores are untouched.
std::vector<Detection> detections_to_reference_frame(std::span<const Detection> dets,
                                                     std::pair<int, int> from_shape,
                                                     std::pair<int, int> to_shape);

}  // namespace srbench::detect
