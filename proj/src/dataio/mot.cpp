#include "srbench/dataio/mot.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "srbench/errors.hpp"

namespace srbench::dataio {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

long parse_int_field(const std::string& s, int line, const char* what) {
  if (s.empty()) throw MalformedLine(line, std::string("empty ") + what);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) {
    throw MalformedLine(line, std::string("non-integer ") + what + " '" + s + "'");
  }
  return v;
}

double parse_real_field(const std::string& s, int line, const char* what) {
  if (s.empty()) throw MalformedLine(line, std::string("empty ") + what);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) {
    throw MalformedLine(line, std::string("non-numeric ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

MotGroundTruth parse_mot_gt(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open gt file '" + path.string() + "'");

  MotGroundTruth gt;
  std::string line;
  int line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const auto fields = split_csv(line);
    if (fields.size() < 6) {
      throw MalformedLine(line_no, "expected at least 6 comma-separated fields, got " +
                                       std::to_string(fields.size()));
    }
    const long frame = parse_int_field(fields[0], line_no, "frame id");
    const long track = parse_int_field(fields[1], line_no, "track id");
    if (frame < 1) throw MalformedLine(line_no, "frame id must be >= 1");
    if (track < 0) throw MalformedLine(line_no, "track id must be >= 0");
    BoundingBox box;
    box.x = parse_real_field(fields[2], line_no, "x");
    box.y = parse_real_field(fields[3], line_no, "y");
    box.w = parse_real_field(fields[4], line_no, "w");
    box.h = parse_real_field(fields[5], line_no, "h");
    if (box.w < 0 || box.h < 0) throw MalformedLine(line_no, "negative box size");
    gt[static_cast<int>(frame)].emplace_back(static_cast<int>(track), box);
    ++records;
  }
  if (records == 0) throw EmptyFile("gt file '" + path.string() + "' has no records");
  return gt;
}

void write_mot_gt(const MotGroundTruth& gt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  char buf[256];
  for (const auto& [frame, tracks] : gt) {
    for (const auto& [track, box] : tracks) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n", frame, track, box.x,
                    box.y, box.w, box.h);
      out << buf;
    }
  }
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

}  // namespace srbench::dataio
