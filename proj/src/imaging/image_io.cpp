#include "srbench/imaging/image_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

#include "srbench/errors.hpp"

namespace srbench::imaging {
namespace {

// Reads one PNM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

int parse_dim(const std::string& tok, const char* what) {
  if (tok.empty()) throw DecodeError(std::string("truncated header, missing ") + what);
  for (const char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw DecodeError(std::string("non-numeric ") + what + " '" + tok + "'");
    }
  }
  const long v = std::strtol(tok.c_str(), nullptr, 10);
  if (v < 1 || v > 1 << 20) throw DecodeError(std::string("out-of-range ") + what);
  return static_cast<int>(v);
}

}  // namespace

ImageBuffer load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open '" + path.string() + "'");

  const std::string magic = next_token(in);
  if (magic == "P5") {
    throw UnsupportedChannelCount("'" + path.string() + "' is a 1-channel PGM, need 3-channel PPM");
  }
  if (magic != "P6") {
    throw DecodeError("'" + path.string() + "' is not a binary PPM (magic '" + magic + "')");
  }
  const int width = parse_dim(next_token(in), "width");
  const int height = parse_dim(next_token(in), "height");
  const int maxval = parse_dim(next_token(in), "maxval");
  if (maxval != 255) throw DecodeError("'" + path.string() + "' maxval must be 255");

  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * ImageBuffer::kChannels);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (static_cast<std::size_t>(in.gcount()) != data.size()) {
    throw DecodeError("'" + path.string() + "' truncated pixel data");
  }
  return ImageBuffer(width, height, std::move(data));
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
  if (img.empty()) throw InvalidDimensions("cannot save an empty image");
  const auto parent = path.parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("parent directory '" + parent.string() + "' does not exist");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

std::string frame_filename(int frame_id, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d", frame_id);
  return std::string(buf) + "." + ext;
}

}  // namespace srbench::imaging
