#include "srbench/rlfn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "srbench/errors.hpp"

namespace srbench::rlfn {
namespace {

constexpr char kMagic[4] = {'S', 'R', 'D', 'B'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw CorruptCheckpoint("truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_string(std::ostream& out, const std::string& s) {
  write_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const std::uint32_t n = read_u32(in);
  if (n > 1 << 20) throw CorruptCheckpoint("implausible string length");
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw CorruptCheckpoint("truncated string");
  return s;
}

void write_f32_data(std::ostream& out, const Tensor& t) {
  // Little-endian host assumed; floats written verbatim.
  std::vector<float> tmp(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) tmp[i] = static_cast<float>(t.v[i]);
  out.write(reinterpret_cast<const char*>(tmp.data()),
            static_cast<std::streamsize>(tmp.size() * sizeof(float)));
}

void read_f32_data(std::istream& in, Tensor& t) {
  std::vector<float> tmp(t.size());
  in.read(reinterpret_cast<char*>(tmp.data()),
          static_cast<std::streamsize>(tmp.size() * sizeof(float)));
  if (!in || static_cast<std::size_t>(in.gcount()) != tmp.size() * sizeof(float)) {
    throw CorruptCheckpoint("truncated tensor data");
  }
  for (std::size_t i = 0; i < t.size(); ++i) t.v[i] = static_cast<double>(tmp[i]);
}

}  // namespace

void save_checkpoint(const SRModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");

  out.write(kMagic, 4);
  write_u32(out, kFormatVersion);
  write_u32(out, static_cast<std::uint32_t>(model.config.scale));
  write_u32(out, static_cast<std::uint32_t>(model.config.feature_channels));
  write_u32(out, static_cast<std::uint32_t>(model.config.num_blocks));
  write_u32(out, static_cast<std::uint32_t>(model.config.attention_reduction));
  write_u32(out, model.config.tiny_preset ? 1 : 0);
  write_string(out, model.train_dataset);

  const auto params = model.parameters();
  write_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, tensor] : params) {
    write_string(out, name);
    write_u32(out, static_cast<std::uint32_t>(tensor->shape.size()));
    for (const int d : tensor->shape) write_u32(out, static_cast<std::uint32_t>(d));
    write_f32_data(out, *tensor);
  }
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

SRModel load_checkpoint(const std::filesystem::path& path, std::optional<int> expected_scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open checkpoint '" + path.string() + "'");

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw CorruptCheckpoint("'" + path.string() + "' lacks the SRDB magic");
  }
  const std::uint32_t version = read_u32(in);
  if (version != kFormatVersion) {
    throw VersionMismatch("checkpoint format version " + std::to_string(version) +
                          ", expected " + std::to_string(kFormatVersion));
  }

  SRModelConfig cfg;
  cfg.scale = static_cast<int>(read_u32(in));
  cfg.feature_channels = static_cast<int>(read_u32(in));
  cfg.num_blocks = static_cast<int>(read_u32(in));
  cfg.attention_reduction = static_cast<int>(read_u32(in));
  cfg.tiny_preset = read_u32(in) != 0;
  const std::string label = read_string(in);
  if (expected_scale && cfg.scale != *expected_scale) {
    throw ScaleMismatch("checkpoint is scale x" + std::to_string(cfg.scale) +
                        " but the run needs x" + std::to_string(*expected_scale));
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw CorruptCheckpoint(std::string("bad embedded config: ") + e.what());
  }

  SRModel model = build_model(cfg, 0);
  model.train_dataset = label;
  auto params = model.parameters();
  const std::uint32_t count = read_u32(in);
  if (count != params.size()) {
    throw CorruptCheckpoint("tensor count " + std::to_string(count) + " does not match config (" +
                            std::to_string(params.size()) + ")");
  }
  for (auto& ref : params) {
    const std::string name = read_string(in);
    if (name != ref.name) {
      throw CorruptCheckpoint("tensor '" + name + "' where '" + ref.name + "' was expected");
    }
    const std::uint32_t ndim = read_u32(in);
    if (ndim != ref.tensor->shape.size()) {
      throw CorruptCheckpoint("tensor '" + name + "' rank mismatch");
    }
    for (const int d : ref.tensor->shape) {
      if (read_u32(in) != static_cast<std::uint32_t>(d)) {
        throw CorruptCheckpoint("tensor '" + name + "' shape mismatch");
      }
    }
    read_f32_data(in, *ref.tensor);
  }
  // Anything left over means the writer and reader disagree about layout.
  char probe;
  in.read(&probe, 1);
  if (!in.eof()) throw CorruptCheckpoint("trailing bytes after tensor data");
  return model;
}

}  // namespace srbench::rlfn
