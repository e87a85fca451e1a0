#include "srbench/rlfn/model.hpp"

#include <cmath>

#include "srbench/core/rng.hpp"
#include "srbench/errors.hpp"

namespace srbench::rlfn {

SRModelConfig SRModelConfig::tiny(int scale_factor) {
  SRModelConfig cfg;
  cfg.scale = scale_factor;
  cfg.feature_channels = 16;
  cfg.num_blocks = 2;
  cfg.tiny_preset = true;
  return cfg;
}

int SRModelConfig::esa_channels() const noexcept {
  return std::max(1, feature_channels / attention_reduction);
}

void SRModelConfig::validate() const {
  if (scale != 2 && scale != 3 && scale != 4 && scale != 6) {
    throw InvalidConfig("scale must be one of {2,3,4,6}, got " + std::to_string(scale));
  }
  if (feature_channels < 4) {
    throw InvalidConfig("feature_channels must be >= 4, got " + std::to_string(feature_channels));
  }
  if (num_blocks < 1) {
    throw InvalidConfig("num_blocks must be >= 1, got " + std::to_string(num_blocks));
  }
  if (attention_reduction < 1) {
    throw InvalidConfig("attention_reduction must be >= 1");
  }
}

namespace {

void fill_normal(Tensor& t, SplitMix64& rng, double stddev) {
  for (double& v : t.v) v = rng.normal(0.0, stddev);
}

// He-style fan-in scaling.
double conv_stddev(const Conv2d& c) {
  return std::sqrt(2.0 / (static_cast<double>(c.in_ch) * c.ksize * c.ksize));
}

}  // namespace

SRModel build_model(const SRModelConfig& config, std::uint64_t seed) {
  config.validate();
  SRModel m;
  m.config = config;

  const int c = config.feature_channels;
  const int e = config.esa_channels();
  const int s = config.scale;

  SplitMix64 rng(derive_stream(seed, "rlfn-init"));

  m.stem = Conv2d(3, c, 3, 1, 1);
  fill_normal(m.stem.w, rng, conv_stddev(m.stem) * 0.1);
  // First three stem channels pass the RGB planes straight through; together
  // with the identity head taps below this makes the untrained network a
  // nearest-neighbour upscaler.
  for (int ch = 0; ch < 3; ++ch) {
    for (int ci = 0; ci < 3; ++ci) {
      for (int k = 0; k < 9; ++k) {
        m.stem.w.v[((static_cast<std::size_t>(ch) * 3) + ci) * 9 + k] =
            (ci == ch && k == 4) ? 1.0 : 0.0;
      }
    }
  }

  m.blocks.resize(static_cast<std::size_t>(config.num_blocks));
  for (auto& block : m.blocks) {
    block.conv1 = Conv2d(c, c, 3, 1, 1);
    block.conv2 = Conv2d(c, c, 3, 1, 1);
    block.conv3 = Conv2d(c, c, 3, 1, 1);
    fill_normal(block.conv1.w, rng, conv_stddev(block.conv1));
    fill_normal(block.conv2.w, rng, conv_stddev(block.conv2));
    fill_normal(block.conv3.w, rng, conv_stddev(block.conv3));

    block.esa.squeeze = Conv2d(c, e, 1, 1, 0);
    block.esa.down = Conv2d(e, e, 3, 2, 1);
    block.esa.mid = Conv2d(e, e, 3, 1, 1);
    block.esa.expand = Conv2d(e, c, 1, 1, 0);
    fill_normal(block.esa.squeeze.w, rng, conv_stddev(block.esa.squeeze));
    fill_normal(block.esa.down.w, rng, conv_stddev(block.esa.down));
    fill_normal(block.esa.mid.w, rng, conv_stddev(block.esa.mid));
    fill_normal(block.esa.expand.w, rng, conv_stddev(block.esa.expand) * 0.1);
    // Bias the gate towards open so early training signal passes through.
    for (double& v : block.esa.expand.b.v) v = 2.0;
  }

  m.fusion = Conv2d(c, c, 3, 1, 1);
  // Near-zero fusion keeps the init at the nearest-neighbour pass-through
  // while leaving small nonzero gradients flowing into the blocks.
  fill_normal(m.fusion.w, rng, 1e-4);

  m.head = Conv2d(c, 3 * s * s, 3, 1, 1);
  fill_normal(m.head.w, rng, 0.0);
  for (int ch = 0; ch < 3; ++ch) {
    for (int sub = 0; sub < s * s; ++sub) {
      const std::size_t row = static_cast<std::size_t>(ch) * s * s + sub;
      m.head.w.v[(row * c + ch) * 9 + 4] = 1.0;
    }
  }

  for (auto& [name, tensor] : m.parameters()) {
    (void)name;
    tensor->round_to_f32();
  }
  return m;
}

std::vector<SRModel::ParamRef> SRModel::parameters() {
  std::vector<ParamRef> out;
  const auto push = [&out](const std::string& name, Conv2d& conv) {
    out.push_back({name + ".weight", &conv.w});
    out.push_back({name + ".bias", &conv.b});
  };
  push("stem", stem);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string p = "blocks." + std::to_string(i);
    push(p + ".conv1", blocks[i].conv1);
    push(p + ".conv2", blocks[i].conv2);
    push(p + ".conv3", blocks[i].conv3);
    push(p + ".esa.squeeze", blocks[i].esa.squeeze);
    push(p + ".esa.down", blocks[i].esa.down);
    push(p + ".esa.mid", blocks[i].esa.mid);
    push(p + ".esa.expand", blocks[i].esa.expand);
  }
  push("fusion", fusion);
  push("head", head);
  return out;
}

std::vector<std::pair<std::string, const Tensor*>> SRModel::parameters() const {
  auto& self = const_cast<SRModel&>(*this);
  std::vector<std::pair<std::string, const Tensor*>> out;
  for (const auto& ref : self.parameters()) out.emplace_back(ref.name, ref.tensor);
  return out;
}

std::int64_t SRModel::param_count() const {
  std::int64_t n = 0;
  for (const auto& [name, tensor] : parameters()) {
    (void)name;
    n += static_cast<std::int64_t>(tensor->size());
  }
  return n;
}

GradBuffer GradBuffer::zeros_like(SRModel& model) {
  GradBuffer buf;
  for (const auto& ref : model.parameters()) {
    buf.grads.push_back(Tensor::zeros(ref.tensor->shape));
  }
  return buf;
}

GradBuffer& GradBuffer::operator+=(const GradBuffer& other) {
  for (std::size_t i = 0; i < grads.size(); ++i) grads[i] += other.grads[i];
  return *this;
}

void GradBuffer::zero() {
  for (auto& g : grads) g.zero();
}

namespace {

Tensor esa_forward(const EsaUnit& esa, const Tensor& x, EsaTrace* trace) {
  Tensor squeezed = esa.squeeze.forward(x);
  Tensor downed = esa.down.forward(squeezed);
  Tensor mid_pre = esa.mid.forward(downed);
  Tensor mid_act = silu(mid_pre);
  Tensor upsampled = bilinear_resize(mid_act, x.dim(1), x.dim(2));
  Tensor gate_pre = esa.expand.forward(upsampled);
  Tensor mask = sigmoid(gate_pre);
  Tensor out = elementwise_mul(x, mask);
  if (trace) {
    trace->input = x;
    trace->squeezed = std::move(squeezed);
    trace->downed = std::move(downed);
    trace->mid_pre = std::move(mid_pre);
    trace->mid_act = std::move(mid_act);
    trace->upsampled = std::move(upsampled);
    trace->gate_pre = std::move(gate_pre);
    trace->mask = std::move(mask);
  }
  return out;
}

Tensor block_forward(const LocalFeatureBlock& block, const Tensor& x, BlockTrace* trace) {
  Tensor pre1 = block.conv1.forward(x);
  Tensor act1 = silu(pre1);
  Tensor pre2 = block.conv2.forward(act1);
  Tensor act2 = silu(pre2);
  Tensor pre3 = block.conv3.forward(act2);
  Tensor act3 = silu(pre3);
  Tensor residual = add(act3, x);
  Tensor out = esa_forward(block.esa, residual, trace ? &trace->esa : nullptr);
  if (trace) {
    trace->input = x;
    trace->pre1 = std::move(pre1);
    trace->act1 = std::move(act1);
    trace->pre2 = std::move(pre2);
    trace->act2 = std::move(act2);
    trace->pre3 = std::move(pre3);
    trace->act3 = std::move(act3);
    trace->residual = std::move(residual);
  }
  return out;
}

}  // namespace

Tensor net_forward(const SRModel& model, const Tensor& x, ForwardTrace* trace) {
  if (x.dim(0) != 3) throw InternalError("net_forward expects a [3,H,W] tensor");
  Tensor stem_out = model.stem.forward(x);
  Tensor h = stem_out;
  if (trace) {
    trace->input = x;
    trace->blocks.resize(model.blocks.size());
  }
  for (std::size_t i = 0; i < model.blocks.size(); ++i) {
    h = block_forward(model.blocks[i], h, trace ? &trace->blocks[i] : nullptr);
  }
  Tensor fusion_out = model.fusion.forward(h);
  Tensor fused = add(fusion_out, stem_out);
  Tensor head_out = model.head.forward(fused);
  Tensor y = pixel_shuffle(head_out, model.config.scale);
  if (trace) {
    trace->stem_out = std::move(stem_out);
    trace->body_out = std::move(h);
    trace->fusion_out = std::move(fusion_out);
    trace->fused = std::move(fused);
    trace->head_out = std::move(head_out);
  }
  return y;
}

namespace {

// Indices into the GradBuffer for one conv (weight, bias); the buffer mirrors
// SRModel::parameters() order: 2 tensors per conv, 7 convs per block.
struct GradCursor {
  GradBuffer* buf;
  std::size_t next = 0;
  std::pair<Tensor*, Tensor*> take() {
    Tensor* w = &buf->grads[next++];
    Tensor* b = &buf->grads[next++];
    return {w, b};
  }
};

Tensor esa_backward(const EsaUnit& esa, const EsaTrace& t, const Tensor& gout,
                    Tensor& gw_squeeze, Tensor& gb_squeeze, Tensor& gw_down, Tensor& gb_down,
                    Tensor& gw_mid, Tensor& gb_mid, Tensor& gw_expand, Tensor& gb_expand) {
  Tensor g_input = elementwise_mul(gout, t.mask);
  Tensor g_mask = elementwise_mul(gout, t.input);
  Tensor g_gate_pre = sigmoid_backward_from_output(t.mask, g_mask);
  Tensor g_up = esa.expand.backward(t.upsampled, g_gate_pre, gw_expand, gb_expand);
  Tensor g_mid_act = bilinear_resize_backward(g_up, t.mid_act.dim(1), t.mid_act.dim(2));
  Tensor g_mid_pre = silu_backward(t.mid_pre, g_mid_act);
  Tensor g_down = esa.mid.backward(t.downed, g_mid_pre, gw_mid, gb_mid);
  Tensor g_squeezed = esa.down.backward(t.squeezed, g_down, gw_down, gb_down);
  g_input += esa.squeeze.backward(t.input, g_squeezed, gw_squeeze, gb_squeeze);
  return g_input;
}

Tensor block_backward(const LocalFeatureBlock& block, const BlockTrace& t, const Tensor& gout,
                      GradCursor& cursor) {
  auto [gw1, gb1] = cursor.take();
  auto [gw2, gb2] = cursor.take();
  auto [gw3, gb3] = cursor.take();
  auto [gwsq, gbsq] = cursor.take();
  auto [gwdn, gbdn] = cursor.take();
  auto [gwmd, gbmd] = cursor.take();
  auto [gwex, gbex] = cursor.take();

  Tensor g_residual = esa_backward(block.esa, t.esa, gout, *gwsq, *gbsq, *gwdn, *gbdn, *gwmd,
                                   *gbmd, *gwex, *gbex);
  // residual = act3 + input
  Tensor g_pre3 = silu_backward(t.pre3, g_residual);
  Tensor g_act2 = block.conv3.backward(t.act2, g_pre3, *gw3, *gb3);
  Tensor g_pre2 = silu_backward(t.pre2, g_act2);
  Tensor g_act1 = block.conv2.backward(t.act1, g_pre2, *gw2, *gb2);
  Tensor g_pre1 = silu_backward(t.pre1, g_act1);
  Tensor g_input = block.conv1.backward(t.input, g_pre1, *gw1, *gb1);
  g_input += g_residual;  // skip path
  return g_input;
}

}  // namespace

void net_backward(const SRModel& model, const ForwardTrace& trace, const Tensor& gy,
                  GradBuffer& grads) {
  GradCursor cursor{&grads, 0};
  auto [gw_stem, gb_stem] = cursor.take();
  std::vector<GradCursor> block_cursors;
  // Parameter order is stem, blocks..., fusion, head; walk it explicitly.
  const std::size_t per_block = 14;
  std::size_t offset = 2;
  for (std::size_t i = 0; i < model.blocks.size(); ++i) {
    block_cursors.push_back(GradCursor{&grads, offset});
    offset += per_block;
  }
  GradCursor fusion_cursor{&grads, offset};
  auto [gw_fusion, gb_fusion] = fusion_cursor.take();
  auto [gw_head, gb_head] = fusion_cursor.take();

  Tensor g_head_out = pixel_shuffle_backward(gy, model.config.scale);
  Tensor g_fused = model.head.backward(trace.fused, g_head_out, *gw_head, *gb_head);
  // fused = fusion_out + stem_out
  Tensor g_stem = g_fused;
  Tensor g_h = model.fusion.backward(trace.body_out, g_fused, *gw_fusion, *gb_fusion);
  for (std::size_t i = model.blocks.size(); i-- > 0;) {
    g_h = block_backward(model.blocks[i], trace.blocks[i], g_h, block_cursors[i]);
  }
  g_stem += g_h;  // chain input is the stem output
  model.stem.backward(trace.input, g_stem, *gw_stem, *gb_stem);
}

Tensor image_to_tensor(const ImageBuffer& img) {
  Tensor t({3, img.height(), img.width()});
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) t.at(c, y, x) = img.at(x, y, c) / 255.0;
    }
  }
  return t;
}

ImageBuffer tensor_to_image(const Tensor& t) {
  ImageBuffer img(t.dim(2), t.dim(1));
  for (int y = 0; y < t.dim(1); ++y) {
    for (int x = 0; x < t.dim(2); ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = quantize_intensity(t.at(c, y, x) * 255.0);
    }
  }
  return img;
}

ImageBuffer sr_forward(const SRModel& model, const ImageBuffer& lr_image) {
  if (lr_image.width() < 8 || lr_image.height() < 8) {
    throw InputTooSmall("sr_forward needs at least 8x8 input, got " +
                        std::to_string(lr_image.width()) + "x" + std::to_string(lr_image.height()));
  }
  const Tensor y = net_forward(model, image_to_tensor(lr_image));
  return tensor_to_image(y);
}

}  // namespace srbench::rlfn
