#pragma once

#include <cstdint>
#include <vector>

#include "srbench/core/image.hpp"

namespace srbench::synth {

/// Procedural texture: a smooth color gradient overlaid with random
/// sinusoidal gratings, hard-edged rectangles and filled disks. The sharp
/// structure is what gives a learned upscaler something to win on.
ImageBuffer texture_image(int width, int height, std::uint64_t seed);

std::vector<ImageBuffer> texture_set(int count, int width, int height, std::uint64_t seed);

}  // namespace srbench::synth
