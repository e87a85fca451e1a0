#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srbench/core/image.hpp"
#include "srbench/rlfn/layers.hpp"

namespace srbench::rlfn {

struct SRModelConfig {
  int scale = 2;                 // one of {2,3,4,6}
  int feature_channels = 52;
  int num_blocks = 4;
  int attention_reduction = 16;  // attention width = channels / reduction
  bool tiny_preset = false;      // 16 channels, 2 blocks; test-sized

  static SRModelConfig tiny(int scale_factor);

  int esa_channels() const noexcept;
  void validate() const;  // InvalidConfig
  bool operator==(const SRModelConfig&) const = default;
};

/// One residual local feature block: three conv+activation stages with an
/// additive local skip, then a spatial-attention gate.
struct EsaUnit {
  Conv2d squeeze;  // 1x1, C -> E
  Conv2d down;     // 3x3 stride 2, E -> E
  Conv2d mid;      // 3x3, E -> E
  Conv2d expand;   // 1x1, E -> C
};

struct LocalFeatureBlock {
  Conv2d conv1, conv2, conv3;  // 3x3, C -> C
  EsaUnit esa;
};

struct SRModel {
  SRModelConfig config;
  std::string train_dataset;  // free-form label carried into checkpoints

  Conv2d stem;    // 3x3, 3 -> C
  std::vector<LocalFeatureBlock> blocks;
  Conv2d fusion;  // 3x3, C -> C, plus global skip from the stem output
  Conv2d head;    // 3x3, C -> 3*scale^2, feeding the pixel shuffle

  struct ParamRef {
    std::string name;
    Tensor* tensor;
  };
  std::vector<ParamRef> parameters();
  std::vector<std::pair<std::string, const Tensor*>> parameters() const;
  std::int64_t param_count() const;
};

/// Builds a model with deterministic seeded initialization. The upsampling
/// path starts as a nearest-neighbour pass-through of the input, so an
/// untrained model reproduces its input at scale.
SRModel build_model(const SRModelConfig& config, std::uint64_t seed);

/// Intermediate activations of one forward pass, kept for the backward pass.
struct EsaTrace {
  Tensor input;     // gate input (residual block output)
  Tensor squeezed;
  Tensor downed;
  Tensor mid_pre;   // mid conv output before activation
  Tensor mid_act;
  Tensor upsampled;
  Tensor gate_pre;  // expand output before sigmoid
  Tensor mask;
};

struct BlockTrace {
  Tensor input;
  Tensor pre1, act1, pre2, act2, pre3, act3;
  Tensor residual;  // act3 + input
  EsaTrace esa;
};

struct ForwardTrace {
  Tensor input;      // [3,H,W] in [0,1]
  Tensor stem_out;
  std::vector<BlockTrace> blocks;
  Tensor body_out;   // last block output
  Tensor fusion_out;
  Tensor fused;      // fusion_out + stem_out
  Tensor head_out;
};

/// Gradient buffer mirroring SRModel::parameters() order.
struct GradBuffer {
  std::vector<Tensor> grads;

  static GradBuffer zeros_like(SRModel& model);
  GradBuffer& operator+=(const GradBuffer& other);
  void zero();
};

/// Forward pass on a [3,H,W] tensor in [0,1]; output is [3,sH,sW],
/// unclamped. When trace is non-null every intermediate is recorded.
Tensor net_forward(const SRModel& model, const Tensor& x, ForwardTrace* trace = nullptr);

/// Backward pass for d(loss)/d(output); accumulates parameter gradients.
void net_backward(const SRModel& model, const ForwardTrace& trace, const Tensor& gy,
                  GradBuffer& grads);

/// Whole-image super-resolution on 8-bit buffers; clamps on materialization.
/// Inputs smaller than 8px on a side raise InputTooSmall.
ImageBuffer sr_forward(const SRModel& model, const ImageBuffer& lr_image);

Tensor image_to_tensor(const ImageBuffer& img);             // [3,H,W], [0,1]
ImageBuffer tensor_to_image(const Tensor& t);               // clamp + quantize

}  // namespace srbench::rlfn
