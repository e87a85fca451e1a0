#include "srbench/synth/toydata.hpp"

#include <fstream>

#include "srbench/core/rng.hpp"
#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"

namespace srbench::synth {
namespace {

struct Track {
  int id;
  std::string role;
  double x, y, w, h;   // top-left + size
  double vx, vy;       // per-frame motion
  std::uint8_t color[3];
};

void draw_rect(ImageBuffer& img, const Track& t) {
  const int x0 = std::max(0, static_cast<int>(t.x));
  const int y0 = std::max(0, static_cast<int>(t.y));
  const int x1 = std::min(img.width(), static_cast<int>(t.x + t.w));
  const int y1 = std::min(img.height(), static_cast<int>(t.y + t.h));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = t.color[c];
    }
  }
}

void draw_disk(ImageBuffer& img, const Track& t) {
  const double cx = t.x + t.w / 2.0;
  const double cy = t.y + t.h / 2.0;
  const double r = t.w / 2.0;
  const int x0 = std::max(0, static_cast<int>(cx - r));
  const int y0 = std::max(0, static_cast<int>(cy - r));
  const int x1 = std::min(img.width(), static_cast<int>(cx + r) + 1);
  const int y1 = std::min(img.height(), static_cast<int>(cy + r) + 1);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = t.color[c];
      }
    }
  }
}

}  // namespace

std::filesystem::path write_toy_dataset(const std::filesystem::path& root,
                                        const ToyDatasetSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(root);

  static const char* kPlayerRoles[] = {
      "player team left",      "player team right", "goalkeeper team left",
      "goalkeeper team right", "main referee",      "side referee",
      "staff"};

  dataio::DatasetManifest manifest;
  manifest.split = dataio::Split::kTest;

  for (int s = 0; s < spec.sequences; ++s) {
    const std::string seq_id = "seq" + std::to_string(s + 1);
    const fs::path seq_dir = root / seq_id;
    const fs::path frame_dir = seq_dir / "img1";
    fs::create_directories(frame_dir);

    SplitMix64 rng(derive_stream(spec.seed, "toy-seq", static_cast<std::uint64_t>(s)));

    std::vector<Track> tracks;
    Track ball{};
    ball.id = 0;
    ball.role = "ball";
    ball.w = ball.h = 5.0;
    ball.x = rng.uniform(10.0, spec.width - 20.0);
    ball.y = rng.uniform(10.0, spec.height - 20.0);
    ball.vx = rng.uniform(-2.0, 2.0);
    ball.vy = rng.uniform(-1.5, 1.5);
    ball.color[0] = ball.color[1] = ball.color[2] = 250;
    tracks.push_back(ball);

    for (int p = 0; p < spec.players; ++p) {
      Track t{};
      t.id = p + 1;
      t.role = kPlayerRoles[p % 7];
      t.w = rng.uniform(7.0, 11.0);
      t.h = rng.uniform(16.0, 22.0);
      t.x = rng.uniform(5.0, spec.width - t.w - 10.0);
      t.y = rng.uniform(5.0, spec.height - t.h - 10.0);
      t.vx = rng.uniform(-1.5, 1.5);
      t.vy = rng.uniform(-1.0, 1.0);
      t.color[0] = static_cast<std::uint8_t>(rng.uniform_int(120, 255));
      t.color[1] = static_cast<std::uint8_t>(rng.uniform_int(0, 120));
      t.color[2] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
      tracks.push_back(t);
    }

    std::ofstream gt(seq_dir / "gt.txt", std::ios::trunc);
    if (!gt) throw IoError("cannot write toy gt file");
    for (int f = 1; f <= spec.frames_per_sequence; ++f) {
      ImageBuffer frame(spec.width, spec.height);
      // Pitch backdrop with a gentle shading gradient.
      for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
          frame.at(x, y, 0) = static_cast<std::uint8_t>(30 + (x * 20) / spec.width);
          frame.at(x, y, 1) = static_cast<std::uint8_t>(120 + (y * 30) / spec.height);
          frame.at(x, y, 2) = 40;
        }
      }
      char line[128];
      for (auto& t : tracks) {
        if (t.role == "ball") {
          draw_disk(frame, t);
        } else {
          draw_rect(frame, t);
        }
        std::snprintf(line, sizeof(line), "%d,%d,%.1f,%.1f,%.1f,%.1f,1,-1,-1,-1\n", f, t.id, t.x,
                      t.y, t.w, t.h);
        gt << line;
        // Advance, bouncing off a safety margin inside the frame.
        t.x += t.vx;
        t.y += t.vy;
        if (t.x < 4.0 || t.x + t.w > spec.width - 4.0) {
          t.vx = -t.vx;
          t.x += 2.0 * t.vx;
        }
        if (t.y < 4.0 || t.y + t.h > spec.height - 4.0) {
          t.vy = -t.vy;
          t.y += 2.0 * t.vy;
        }
      }
      imaging::save_image(frame, frame_dir / imaging::frame_filename(f));
    }
    gt.close();

    std::ofstream roles(seq_dir / "roles.txt", std::ios::trunc);
    if (!roles) throw IoError("cannot write toy role file");
    roles << "# track to role assignments\n";
    for (const auto& t : tracks) roles << t.id << "=" << t.role << "\n";
    roles.close();

    dataio::SequenceEntry entry;
    entry.id = seq_id;
    entry.frame_dir = frame_dir;
    entry.gt_file = seq_dir / "gt.txt";
    entry.role_file = seq_dir / "roles.txt";
    entry.width = spec.width;
    entry.height = spec.height;
    entry.frame_count = spec.frames_per_sequence;
    manifest.sequences.push_back(std::move(entry));
  }

  const fs::path manifest_path = root / "manifest.json";
  dataio::write_manifest(manifest, manifest_path);
  return manifest_path;
}

}  // namespace srbench::synth
