#include "srbench/pipeline/experiment.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "srbench/core/geometry.hpp"
#include "srbench/core/rng.hpp"
#include "srbench/dataio/manifest.hpp"
#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"
#include "srbench/rlfn/checkpoint.hpp"

namespace srbench::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct FrameJob {
  int sequence_index = 0;
  int frame_id = 0;
  const dataio::SequenceEntry* sequence = nullptr;
  const std::vector<GroundTruthBox>* gt = nullptr;
};

struct FrameResult {
  std::optional<imaging::QualityEntry> quality;
  std::vector<Detection> detections;  // in the native annotation frame
  double load_s = 0.0;
  double degrade_s = 0.0;
  double restore_s = 0.0;
  double detect_s = 0.0;
};

std::string shape_string(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

}  // namespace

std::pair<ImageBuffer, BoxTransform> letterbox_image(const ImageBuffer& img, int target_w,
                                                     int target_h) {
  const double s = std::min(static_cast<double>(target_w) / img.width(),
                            static_cast<double>(target_h) / img.height());
  const int inner_w = std::max(1, static_cast<int>(std::lround(img.width() * s)));
  const int inner_h = std::max(1, static_cast<int>(std::lround(img.height() * s)));
  const int off_x = (target_w - inner_w) / 2;
  const int off_y = (target_h - inner_h) / 2;

  const ImageBuffer inner = imaging::resize_to(img, inner_w, inner_h);
  ImageBuffer canvas(target_w, target_h);
  for (int y = 0; y < inner_h; ++y) {
    for (int x = 0; x < inner_w; ++x) {
      for (int c = 0; c < 3; ++c) canvas.at(x + off_x, y + off_y, c) = inner.at(x, y, c);
    }
  }
  BoxTransform t;
  t.sx = static_cast<double>(inner_w) / img.width();
  t.sy = static_cast<double>(inner_h) / img.height();
  t.ox = off_x;
  t.oy = off_y;
  return {std::move(canvas), t};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto wall_start = Clock::now();
  cfg.validate();

  const dataio::DatasetManifest manifest = dataio::load_manifest(cfg.dataset_manifest);
  if (manifest.sequences.empty()) throw EmptyDataset("manifest lists no sequences");
  const auto violations = dataio::validate_manifest(manifest);
  if (!violations.empty()) {
    std::string msg = "manifest has " + std::to_string(violations.size()) + " violation(s): " +
                      violations.front().sequence + ": " + violations.front().what;
    throw MissingFile(msg);
  }

  // The scale guard fires before any frame work.
  std::optional<rlfn::SRModel> model;
  if (cfg.restoration == Restoration::kRlfn) {
    model = rlfn::load_checkpoint(cfg.rlfn_checkpoint, cfg.degrade_factor);
  }

  // Ground truth per sequence, plus the flat frame-job list.
  std::vector<dataio::FrameGroundTruth> gt_per_sequence(manifest.sequences.size());
  std::vector<FrameJob> jobs;
  static const std::vector<GroundTruthBox> kNoBoxes;
  for (std::size_t si = 0; si < manifest.sequences.size(); ++si) {
    const auto& seq = manifest.sequences[si];
    try {
      gt_per_sequence[si] = dataio::load_ground_truth(seq.gt_file, seq.role_file);
    } catch (const Error& e) {
      throw MissingFile("sequence '" + seq.id + "': " + e.what());
    }
    for (int frame = 1; frame <= seq.frame_count; ++frame) {
      const auto it = gt_per_sequence[si].find(frame);
      jobs.push_back({static_cast<int>(si), frame, &seq,
                      it == gt_per_sequence[si].end() ? &kNoBoxes : &it->second});
    }
  }

  const auto process_frame = [&](const FrameJob& job) -> FrameResult {
    FrameResult result;
    const auto& seq = *job.sequence;

    auto t0 = Clock::now();
    const ImageBuffer native =
        imaging::load_image(seq.frame_dir / imaging::frame_filename(job.frame_id));
    result.load_s = seconds_since(t0);
    if (native.width() != seq.width || native.height() != seq.height) {
      throw ShapeMismatch("sequence '" + seq.id + "' frame " + std::to_string(job.frame_id) +
                          " deviates from the declared shape");
    }

    t0 = Clock::now();
    const ImageBuffer degraded = cfg.degrade_factor == 1
                                     ? native
                                     : imaging::downscale(native, cfg.degrade_factor,
                                                          cfg.degrade_kernel);
    result.degrade_s = seconds_since(t0);

    t0 = Clock::now();
    ImageBuffer processed;
    switch (cfg.restoration) {
      case Restoration::kNone:
        processed = degraded;
        break;
      case Restoration::kBicubicBaseline:
        processed = imaging::resize_to(degraded, degraded.width() * cfg.degrade_factor,
                                       degraded.height() * cfg.degrade_factor,
                                       imaging::ResampleKernel::kBicubic);
        break;
      case Restoration::kRlfn:
        processed = rlfn::sr_forward(*model, degraded);
        break;
    }
    result.restore_s = seconds_since(t0);

    if (cfg.restoration != Restoration::kNone) {
      // Reference cropped to the restored extent (differs only when the
      // factor does not divide the native dimensions).
      const ImageBuffer reference =
          native.width() == processed.width() && native.height() == processed.height()
              ? native
              : native.crop(0, 0, processed.width(), processed.height());
      imaging::QualityEntry entry;
      entry.id = seq.id + "/" + imaging::frame_filename(job.frame_id, "");
      entry.id.pop_back();  // drop the trailing dot of an empty extension
      entry.mse = imaging::mse(processed, reference);
      entry.psnr_db = entry.mse == 0.0 ? std::numeric_limits<double>::infinity()
                                       : 10.0 * std::log10(255.0 * 255.0 / entry.mse);
      result.quality = std::move(entry);
    }

    // Fit to the detector input shape if one is configured.
    ImageBuffer detector_input = processed;
    BoxTransform processed_to_detector;  // identity by default
    if (cfg.detector_input_shape) {
      const auto [tw, th] = *cfg.detector_input_shape;
      if (cfg.fit_mode == FitMode::kStretch) {
        detector_input = imaging::resize_to(processed, tw, th);
        processed_to_detector.sx = static_cast<double>(tw) / processed.width();
        processed_to_detector.sy = static_cast<double>(th) / processed.height();
      } else {
        auto [canvas, t] = letterbox_image(processed, tw, th);
        detector_input = std::move(canvas);
        processed_to_detector = t;
      }
    }

    // Ground truth mapped native -> processed -> detector frame for the
    // synthetic backends.
    const double native_to_processed_sx = static_cast<double>(processed.width()) / seq.width;
    const double native_to_processed_sy = static_cast<double>(processed.height()) / seq.height;
    std::vector<GroundTruthBox> gt_in_detector_frame = *job.gt;
    for (auto& g : gt_in_detector_frame) {
      BoundingBox b = scale_box(g.box, native_to_processed_sx, native_to_processed_sy);
      g.box = processed_to_detector.apply(b);
    }

    t0 = Clock::now();
    const std::uint64_t frame_seed =
        derive_stream(cfg.seed, "frame", hash_tag(seq.id), static_cast<std::uint64_t>(job.frame_id));
    std::vector<Detection> dets =
        detect::detect_seeded(cfg.detector, detector_input, gt_in_detector_frame, frame_seed);
    result.detect_s = seconds_since(t0);

    // Back to the native annotation frame: undo the fit, then rescale the
    // processed frame onto the native one.
    for (auto& d : dets) d.box = processed_to_detector.invert(d.box);
    result.detections = detect::detections_to_reference_frame(
        dets, {processed.width(), processed.height()}, {seq.width, seq.height});
    return result;
  };

  // Fan frames out over a bounded pool; slot-indexed results keep reduction
  // order independent of scheduling.
  std::vector<FrameResult> results(jobs.size());
  const int workers = std::min<int>(cfg.workers, std::max<std::size_t>(jobs.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = process_frame(jobs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            results[i] = process_frame(jobs[i]);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
          next.store(jobs.size());  // drain remaining work
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Deterministic reduction in job order.
  StageTimings timings;
  std::vector<imaging::QualityEntry> quality_entries;
  evalmetrics::FrameDetections all_dets;
  dataio::FrameGroundTruth all_gts;
  constexpr int kFrameStride = 1000000;  // sequences never collide on frame keys
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    auto& r = results[i];
    timings.load_s += r.load_s;
    timings.degrade_s += r.degrade_s;
    timings.restore_s += r.restore_s;
    timings.detect_s += r.detect_s;
    if (r.quality) quality_entries.push_back(std::move(*r.quality));
    const int key = job.sequence_index * kFrameStride + job.frame_id;
    all_dets[key] = std::move(r.detections);
    all_gts[key] = *job.gt;
  }

  const auto eval_start = Clock::now();
  ExperimentReport report;
  report.eval = evalmetrics::evaluate(all_dets, all_gts, cfg.mean_iou_taus);
  timings.evaluate_s = seconds_since(eval_start);

  const auto report_start = Clock::now();
  report.config_echo = cfg.to_json();
  report.config_hash = pipeline::config_hash(cfg);
  report.seed = cfg.seed;
  if (!quality_entries.empty()) {
    report.quality = imaging::aggregate_quality(std::move(quality_entries));
  }

  const auto& first_seq = manifest.sequences.front();
  const int dw = first_seq.width / cfg.degrade_factor;
  const int dh = first_seq.height / cfg.degrade_factor;
  report.input_shape = shape_string(dw, dh);
  switch (cfg.restoration) {
    case Restoration::kNone:
      report.sr = "-";
      report.train_dataset = "-";
      report.scale = "-";
      break;
    case Restoration::kBicubicBaseline:
      report.sr = "bicubic";
      report.train_dataset = "-";
      report.scale = "x" + std::to_string(cfg.degrade_factor);
      break;
    case Restoration::kRlfn:
      report.sr = "RLFN";
      report.train_dataset = !cfg.train_dataset_label.empty() ? cfg.train_dataset_label
                             : !model->train_dataset.empty()  ? model->train_dataset
                                                              : "-";
      report.scale = "x" + std::to_string(cfg.degrade_factor);
      break;
  }
  if (cfg.detector_input_shape) {
    report.output_shape =
        shape_string(cfg.detector_input_shape->first, cfg.detector_input_shape->second);
  } else if (cfg.restoration == Restoration::kNone) {
    report.output_shape = report.input_shape;
  } else {
    report.output_shape = shape_string(dw * cfg.degrade_factor, dh * cfg.degrade_factor);
  }

  timings.report_s = seconds_since(report_start);
  timings.total_s = timings.load_s + timings.degrade_s + timings.restore_s + timings.detect_s +
                    timings.evaluate_s + timings.report_s;
  timings.wall_clock_s = seconds_since(wall_start);
  report.timings = timings;

  if (!cfg.output_dir.empty()) write_report(report, cfg.output_dir);
  return report;
}

}  // namespace srbench::pipeline
