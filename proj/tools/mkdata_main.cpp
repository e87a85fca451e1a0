// srbench-mkdata: generates self-contained demo inputs — a toy tracking
// dataset (frames + MOT gt + roles + manifest) and procedural texture sets
// for super-resolution training.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "srbench/errors.hpp"
#include "srbench/imaging/image_io.hpp"
#include "srbench/synth/textures.hpp"
#include "srbench/synth/toydata.hpp"

namespace fs = std::filesystem;
using namespace srbench;

int main(int argc, char** argv) {
  CLI::App app{"srbench-mkdata: synthetic demo data generator"};
  app.require_subcommand(1);

  std::string toy_out = "toy_dataset";
  int toy_sequences = 3, toy_frames = 4, toy_width = 192, toy_height = 108, toy_players = 3;
  std::uint64_t toy_seed = 1;
  auto* toy = app.add_subcommand("toy-dataset", "Tracking dataset with drawn players and ball");
  toy->add_option("--out", toy_out, "Output directory");
  toy->add_option("--sequences", toy_sequences, "Number of sequences");
  toy->add_option("--frames", toy_frames, "Frames per sequence");
  toy->add_option("--width", toy_width, "Frame width");
  toy->add_option("--height", toy_height, "Frame height");
  toy->add_option("--players", toy_players, "Players per sequence");
  toy->add_option("--seed", toy_seed, "RNG seed");

  std::string tex_out = "textures";
  int tex_count = 50, tex_width = 96, tex_height = 96;
  std::uint64_t tex_seed = 1;
  auto* tex = app.add_subcommand("textures", "Procedural texture images for SR training");
  tex->add_option("--out", tex_out, "Output directory");
  tex->add_option("--count", tex_count, "Number of images");
  tex->add_option("--width", tex_width, "Image width");
  tex->add_option("--height", tex_height, "Image height");
  tex->add_option("--seed", tex_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (toy->parsed()) {
      synth::ToyDatasetSpec spec;
      spec.sequences = toy_sequences;
      spec.frames_per_sequence = toy_frames;
      spec.width = toy_width;
      spec.height = toy_height;
      spec.players = toy_players;
      spec.seed = toy_seed;
      const auto manifest = synth::write_toy_dataset(toy_out, spec);
      std::cout << manifest.string() << "\n";
    }
    if (tex->parsed()) {
      fs::create_directories(tex_out);
      char name[32];
      for (int i = 0; i < tex_count; ++i) {
        std::snprintf(name, sizeof(name), "tex_%04d.ppm", i);
        imaging::save_image(synth::texture_image(tex_width, tex_height,
                                                 mix_stream(tex_seed, static_cast<std::uint64_t>(i))),
                            fs::path(tex_out) / name);
      }
      std::cout << tex_out << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "srbench-mkdata: " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  }
  return 0;
}
