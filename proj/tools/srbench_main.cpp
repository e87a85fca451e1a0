// srbench: benchmark harness for super-resolution-assisted object detection
// on football footage. One binary, nine subcommands; all randomness flows
// from --seed flags and config files.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srbench/dataio/manifest.hpp"
#include "srbench/detect/backend.hpp"
#include "srbench/detect/interchange.hpp"
#include "srbench/errors.hpp"
#include "srbench/evalmetrics/evaluate.hpp"
#include "srbench/imaging/image_io.hpp"
#include "srbench/imaging/quality.hpp"
#include "srbench/imaging/resample.hpp"
#include "srbench/pipeline/compare.hpp"
#include "srbench/pipeline/experiment.hpp"
#include "srbench/rlfn/checkpoint.hpp"
#include "srbench/rlfn/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace srbench;

namespace {

std::vector<fs::path> list_ppm(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingFile("directory '" + dir.string() + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EmptyInput("no .ppm files in '" + dir.string() + "'");
  return files;
}

std::string format_psnr(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct DegradeArgs {
  std::string in_dir, out_dir;
  int factor = 2;
  std::string kernel = "bicubic";
};

int cmd_degrade(const DegradeArgs& a) {
  const auto kernel = imaging::kernel_from_string(a.kernel);
  fs::create_directories(a.out_dir);
  for (const auto& f : list_ppm(a.in_dir)) {
    const auto img = imaging::load_image(f);
    imaging::save_image(imaging::downscale(img, a.factor, kernel), fs::path(a.out_dir) / f.filename());
  }
  return 0;
}

struct TrainArgs {
  std::string train_dir, out_file, val_dir, dataset_label, checkpoint_dir;
  int scale = 2;
  int steps = 15000;
  int batch = 32;
  int patch = 64;
  double lr_floor = 1e-5, lr_peak = 1e-2, warmup = 0.05;
  std::uint64_t seed = 0;
  bool tiny = false;
  int channels = 52, blocks = 4;
  int val_interval = 0, checkpoint_interval = 0;
  std::string history_file;
};

int cmd_train_sr(const TrainArgs& a) {
  rlfn::SRModelConfig mcfg;
  if (a.tiny) {
    mcfg = rlfn::SRModelConfig::tiny(a.scale);
  } else {
    mcfg.scale = a.scale;
    mcfg.feature_channels = a.channels;
    mcfg.num_blocks = a.blocks;
  }
  rlfn::SRModel model = rlfn::build_model(mcfg, a.seed);
  model.train_dataset = a.dataset_label;

  rlfn::TrainConfig tcfg;
  tcfg.batch_size = a.batch;
  tcfg.total_steps = a.steps;
  tcfg.lr_floor = a.lr_floor;
  tcfg.lr_peak = a.lr_peak;
  tcfg.warmup_fraction = a.warmup;
  tcfg.patch_size = a.patch;
  tcfg.seed = a.seed;
  tcfg.validation_interval = a.val_interval;
  tcfg.checkpoint_interval = a.checkpoint_interval;
  tcfg.checkpoint_dir = a.checkpoint_dir;

  const auto train_set = rlfn::HrImageSet::from_directory(a.train_dir);
  std::optional<rlfn::HrImageSet> val_set;
  if (!a.val_dir.empty()) val_set = rlfn::HrImageSet::from_directory(a.val_dir);

  const auto history = rlfn::train(model, train_set, tcfg, val_set ? &*val_set : nullptr);
  rlfn::save_checkpoint(model, a.out_file);

  if (!a.history_file.empty()) {
    json doc;
    doc["steps"] = json::array();
    for (const auto& s : history.steps) {
      doc["steps"].push_back({s.step, s.learning_rate, s.loss});
    }
    doc["validations"] = json::array();
    for (const auto& v : history.validations) doc["validations"].push_back({v.step, v.psnr_db});
    std::ofstream out(a.history_file, std::ios::trunc);
    out << doc.dump() << "\n";
  }
  std::fprintf(stderr, "trained %d steps; final loss %.6f; checkpoint: %s\n",
               static_cast<int>(history.steps.size()),
               history.steps.empty() ? 0.0 : history.steps.back().loss, a.out_file.c_str());
  return 0;
}

struct InferArgs {
  std::string model_file, in_dir, out_dir;
};

int cmd_infer_sr(const InferArgs& a) {
  const rlfn::SRModel model = rlfn::load_checkpoint(a.model_file);
  fs::create_directories(a.out_dir);
  for (const auto& f : list_ppm(a.in_dir)) {
    const auto img = imaging::load_image(f);
    imaging::save_image(rlfn::sr_forward(model, img), fs::path(a.out_dir) / f.filename());
  }
  return 0;
}

struct EvalSrArgs {
  std::string restored_dir, reference_dir, train_dataset = "-", sr_label = "RLFN";
  std::string out_file;
  bool as_json = false;
};

int cmd_eval_sr(const EvalSrArgs& a) {
  const auto restored = list_ppm(a.restored_dir);
  std::vector<ImageBuffer> restored_imgs, reference_imgs;
  std::vector<imaging::ImagePairRef> pairs;
  for (const auto& f : restored) {
    const auto ref_path = fs::path(a.reference_dir) / f.filename();
    restored_imgs.push_back(imaging::load_image(f));
    reference_imgs.push_back(imaging::load_image(ref_path));
  }
  for (std::size_t i = 0; i < restored.size(); ++i) {
    pairs.push_back({restored[i].stem().string(), &restored_imgs[i], &reference_imgs[i]});
  }
  const auto report = imaging::quality_report(pairs);

  std::string output;
  if (a.as_json) {
    json doc;
    doc["train_dataset"] = a.train_dataset;
    doc["sr"] = a.sr_label;
    doc["psnr"] = std::isinf(report.psnr_db) ? json("inf") : json(report.psnr_db);
    doc["mse"] = report.mse;
    doc["infinite_psnr_count"] = report.infinite_psnr_count;
    doc["per_image"] = json::array();
    for (const auto& e : report.per_image) {
      doc["per_image"].push_back(
          {e.id, std::isinf(e.psnr_db) ? json("inf") : json(e.psnr_db), e.mse});
    }
    output = doc.dump(2) + "\n";
  } else {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.6f\n", a.train_dataset.c_str(),
                  a.sr_label.c_str(), format_psnr(report.psnr_db).c_str(), report.mse);
    output = std::string("train_dataset,sr,psnr,mse\n") + buf;
  }
  std::cout << output;
  if (!a.out_file.empty()) {
    std::ofstream out(a.out_file, std::ios::trunc);
    if (!out) throw IoError("cannot write '" + a.out_file + "'");
    out << output;
  }
  return 0;
}

struct DetectArgs {
  std::string backend = "null";
  std::string in_dir, gt_file, roles_file, out_file;
  std::uint64_t seed = 0;
  double score_threshold = 0.05;
  int max_detections = 100;
  double center_jitter = 0.0, size_jitter = 0.0, drop_prob = 0.0, fp_rate = 0.0;
  int random_boxes = 10;
  std::string external_command;
  std::string reference_shape;  // "WxH"; defaults to the image shape
};

std::pair<int, int> parse_shape(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("shape must look like 1920x1080");
  try {
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse shape '" + s + "'");
  }
}

int cmd_detect(const DetectArgs& a) {
  detect::DetectorBackend backend;
  backend.kind = detect::backend_kind_from_string(a.backend);
  backend.seed = a.seed;
  backend.score_threshold = a.score_threshold;
  backend.max_detections = a.max_detections;
  backend.oracle.center_jitter_std = a.center_jitter;
  backend.oracle.size_jitter_std = a.size_jitter;
  backend.oracle.drop_prob = a.drop_prob;
  backend.oracle.false_positive_rate = a.fp_rate;
  backend.random.max_boxes = a.random_boxes;
  backend.external.command = a.external_command;

  dataio::FrameGroundTruth gt;
  if (!a.gt_file.empty()) {
    if (a.roles_file.empty()) throw ConfigError("--gt needs --roles");
    gt = dataio::load_ground_truth(a.gt_file, a.roles_file);
  } else if (backend.kind == detect::BackendKind::kOracle) {
    throw ConfigError("oracle backend needs --gt and --roles");
  }

  detect::FrameDetections all;
  std::pair<int, int> image_shape{0, 0};
  static const std::vector<GroundTruthBox> kNoBoxes;
  for (const auto& f : list_ppm(a.in_dir)) {
    int frame_id = 0;
    try {
      frame_id = std::stoi(f.stem().string());
    } catch (const std::exception&) {
      continue;  // non-frame files are skipped
    }
    const auto img = imaging::load_image(f);
    image_shape = {img.width(), img.height()};
    const auto it = gt.find(frame_id);
    const auto& boxes = it == gt.end() ? kNoBoxes : it->second;
    const std::uint64_t frame_seed = mix_stream(a.seed, static_cast<std::uint64_t>(frame_id));
    all[frame_id] = detect::detect_seeded(backend, img, boxes, frame_seed);
  }

  detect::DetectionMeta meta;
  meta.image_shape = image_shape;
  meta.reference_shape = a.reference_shape.empty() ? image_shape : parse_shape(a.reference_shape);
  meta.backend = detect::to_string(backend.kind);
  meta.score_threshold = backend.score_threshold;
  meta.max_detections = backend.max_detections;
  meta.seed = backend.seed;
  detect::write_detections(all, a.out_file, meta);
  return 0;
}

struct EvalDetArgs {
  std::string dets_file, gt_file, roles_file;
  std::vector<double> taus = {0.5, 0.7, 0.9};
  bool as_json = false;
};

int cmd_eval_det(const EvalDetArgs& a) {
  detect::DetectionMeta meta;
  auto dets = detect::read_detections(a.dets_file, &meta);
  const auto gt = dataio::load_ground_truth(a.gt_file, a.roles_file);

  // Map detections into the annotation frame recorded in the sidecar.
  if (meta.image_shape != meta.reference_shape) {
    for (auto& [frame, list] : dets) {
      list = detect::detections_to_reference_frame(list, meta.image_shape, meta.reference_shape);
    }
  }
  const auto result = evalmetrics::evaluate(dets, gt, a.taus);
  if (a.as_json) {
    std::cout << pipeline::eval_result_to_json(result).dump(2) << "\n";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "mAP@IoU=0.50:0.95: %.6f\n", result.map_50_95);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf), "mAP@IoU=0.50: %.6f\n", result.map_50);
    std::cout << buf;
    for (const auto& [tau, v] : result.mean_iou_at) {
      if (v.defined) {
        std::snprintf(buf, sizeof(buf), "meanIoU@%g: %.6f\n", tau, v.percent);
      } else {
        std::snprintf(buf, sizeof(buf), "meanIoU@%g: undefined\n", tau);
      }
      std::cout << buf;
    }
  }
  return 0;
}

struct RunArgs {
  std::string config_file;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  bool as_json = false;
};

int cmd_run(const RunArgs& a) {
  pipeline::ExperimentConfig cfg = pipeline::ExperimentConfig::load(a.config_file);
  if (a.seed_set) cfg.seed = a.seed;
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (a.workers > 0) cfg.workers = a.workers;
  const auto report = pipeline::run_experiment(cfg);
  if (a.as_json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << pipeline::report_table_header() << "\n"
              << pipeline::report_table_row(report) << "\n";
  }
  return 0;
}

struct CompareArgs {
  std::vector<std::string> reports;
  bool as_json = false;
};

int cmd_compare(const CompareArgs& a) {
  std::vector<pipeline::ExperimentReport> reports;
  for (const auto& path : a.reports) reports.push_back(pipeline::read_report(path));
  const auto deltas = pipeline::compare_runs(reports);
  if (a.as_json) {
    json doc = json::array();
    for (const auto& run : deltas) {
      json entry;
      entry["label"] = run.label;
      entry["deltas"] = json::array();
      for (const auto& d : run.deltas) {
        entry["deltas"].push_back({{"metric", d.metric},
                                   {"base", d.base},
                                   {"value", d.value},
                                   {"abs_delta", d.abs_delta},
                                   {"rel_delta", d.rel_delta}});
      }
      doc.push_back(entry);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << pipeline::format_delta_table(deltas);
  }
  return 0;
}

struct ValidateArgs {
  std::string manifest_file;
};

int cmd_validate(const ValidateArgs& a) {
  const auto manifest = dataio::load_manifest(a.manifest_file);
  const auto violations = dataio::validate_manifest(manifest);
  if (violations.empty()) {
    std::cout << "manifest ok: " << manifest.sequences.size() << " sequence(s)\n";
    return 0;
  }
  for (const auto& v : violations) {
    std::cout << v.sequence << ": " << v.what << "\n";
  }
  throw MissingFile("manifest has " + std::to_string(violations.size()) + " violation(s)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srbench: degrade -> super-resolve -> detect -> evaluate benchmark harness"};
  app.require_subcommand(1);

  DegradeArgs degrade_args;
  auto* degrade = app.add_subcommand("degrade", "Downscale every frame in a directory");
  degrade->add_option("--in", degrade_args.in_dir, "Input frame directory")->required();
  degrade->add_option("--out", degrade_args.out_dir, "Output directory")->required();
  degrade->add_option("--factor", degrade_args.factor, "Integer downscale factor")->required();
  degrade->add_option("--kernel", degrade_args.kernel, "nearest|bilinear|bicubic");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train-sr", "Train an RLFN super-resolution model");
  train->add_option("--train-dir", train_args.train_dir, "Directory of HR training images")->required();
  train->add_option("--out", train_args.out_file, "Checkpoint output path")->required();
  train->add_option("--scale", train_args.scale, "Upscale factor (2,3,4,6)")->required();
  train->add_option("--steps", train_args.steps, "Optimizer steps");
  train->add_option("--batch", train_args.batch, "Batch size");
  train->add_option("--patch", train_args.patch, "LR patch size");
  train->add_option("--lr-floor", train_args.lr_floor, "Schedule floor learning rate");
  train->add_option("--lr-peak", train_args.lr_peak, "Schedule peak learning rate");
  train->add_option("--warmup", train_args.warmup, "Warmup fraction of total steps");
  train->add_option("--seed", train_args.seed, "RNG seed");
  train->add_flag("--tiny", train_args.tiny, "Tiny test preset (16 channels, 2 blocks)");
  train->add_option("--channels", train_args.channels, "Feature channels");
  train->add_option("--blocks", train_args.blocks, "Residual blocks");
  train->add_option("--val-dir", train_args.val_dir, "Held-out validation images");
  train->add_option("--val-interval", train_args.val_interval, "Validate every N steps");
  train->add_option("--dataset-label", train_args.dataset_label, "Training-set label for reports");
  train->add_option("--checkpoint-dir", train_args.checkpoint_dir, "Periodic checkpoint directory");
  train->add_option("--checkpoint-interval", train_args.checkpoint_interval,
                    "Checkpoint every N steps");
  train->add_option("--history", train_args.history_file, "Write training history JSON here");

  InferArgs infer_args;
  auto* infer = app.add_subcommand("infer-sr", "Super-resolve every frame in a directory");
  infer->add_option("--model", infer_args.model_file, "Checkpoint path")->required();
  infer->add_option("--in", infer_args.in_dir, "Input LR directory")->required();
  infer->add_option("--out", infer_args.out_dir, "Output directory")->required();

  EvalSrArgs eval_sr_args;
  auto* eval_sr = app.add_subcommand("eval-sr", "PSNR/MSE of restored frames against references");
  eval_sr->add_option("--restored", eval_sr_args.restored_dir, "Restored frames")->required();
  eval_sr->add_option("--reference", eval_sr_args.reference_dir, "Reference frames")->required();
  eval_sr->add_option("--train-dataset", eval_sr_args.train_dataset, "Label for the table row");
  eval_sr->add_option("--sr-label", eval_sr_args.sr_label, "SR method label");
  eval_sr->add_option("--out", eval_sr_args.out_file, "Also write the table here");
  eval_sr->add_flag("--json", eval_sr_args.as_json, "Machine-readable output");

  DetectArgs detect_args;
  auto* det = app.add_subcommand("detect", "Run a detector backend over frames");
  det->add_option("--backend", detect_args.backend, "oracle|random|null|external")->required();
  det->add_option("--in", detect_args.in_dir, "Frame directory")->required();
  det->add_option("--out", detect_args.out_file, "Detection interchange output")->required();
  det->add_option("--gt", detect_args.gt_file, "MOT gt file (oracle backend)");
  det->add_option("--roles", detect_args.roles_file, "Role file (oracle backend)");
  det->add_option("--seed", detect_args.seed, "RNG seed");
  det->add_option("--score-threshold", detect_args.score_threshold, "Minimum kept score");
  det->add_option("--max-detections", detect_args.max_detections, "Cap per frame");
  det->add_option("--center-jitter", detect_args.center_jitter, "Oracle center jitter std");
  det->add_option("--size-jitter", detect_args.size_jitter, "Oracle size jitter std");
  det->add_option("--drop-prob", detect_args.drop_prob, "Oracle drop probability");
  det->add_option("--fp-rate", detect_args.fp_rate, "Oracle false positives per frame");
  det->add_option("--random-boxes", detect_args.random_boxes, "Random backend box cap");
  det->add_option("--external-command", detect_args.external_command,
                  "External detector command ({image} placeholder)");
  det->add_option("--reference-shape", detect_args.reference_shape,
                  "Native annotation shape WxH for the sidecar");

  EvalDetArgs eval_det_args;
  auto* eval_det = app.add_subcommand("eval-det", "Evaluate interchange detections against gt");
  eval_det->add_option("--dets", eval_det_args.dets_file, "Detection interchange file")->required();
  eval_det->add_option("--gt", eval_det_args.gt_file, "MOT gt file")->required();
  eval_det->add_option("--roles", eval_det_args.roles_file, "Role file")->required();
  eval_det->add_option("--taus", eval_det_args.taus, "Mean-IoU thresholds");
  eval_det->add_flag("--json", eval_det_args.as_json, "Machine-readable output");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a full experiment from a config file");
  run->add_option("--config", run_args.config_file, "Experiment config JSON")->required();
  auto* seed_opt = run->add_option("--seed", run_args.seed, "Override the config seed");
  run->add_option("--out", run_args.out_dir, "Override the report output directory");
  run->add_option("--workers", run_args.workers, "Worker threads for frame processing");
  run->add_flag("--json", run_args.as_json, "Print the JSON report instead of the table");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Compare run reports against a baseline");
  compare->add_option("reports", compare_args.reports, "Baseline report.json, then others")
      ->required()
      ->expected(-2);
  compare->add_flag("--json", compare_args.as_json, "Machine-readable output");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a dataset manifest");
  validate->add_option("--manifest", validate_args.manifest_file, "Manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    run_args.seed_set = seed_opt->count() > 0;
    if (degrade->parsed()) return cmd_degrade(degrade_args);
    if (train->parsed()) return cmd_train_sr(train_args);
    if (infer->parsed()) return cmd_infer_sr(infer_args);
    if (eval_sr->parsed()) return cmd_eval_sr(eval_sr_args);
    if (det->parsed()) return cmd_detect(detect_args);
    if (eval_det->parsed()) return cmd_eval_det(eval_det_args);
    if (run->parsed()) return cmd_run(run_args);
    if (compare->parsed()) return cmd_compare(compare_args);
    if (validate->parsed()) return cmd_validate(validate_args);
  } catch (const Error& e) {
    std::cerr << "srbench: " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "srbench: internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
