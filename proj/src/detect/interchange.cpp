#include "srbench/detect/interchange.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srbench/errors.hpp"

namespace srbench::detect {

using nlohmann::json;

std::vector<InterchangeRecord> parse_interchange_records(const std::string& text) {
  std::vector<InterchangeRecord> records;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

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
    if (fields.size() != 7) {
      throw MalformedLine(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
    }
    InterchangeRecord rec;
    try {
      rec.frame_id = std::stoi(fields[0]);
      rec.label = fields[1];
      rec.score = std::stod(fields[2]);
      rec.box.x = std::stod(fields[3]);
      rec.box.y = std::stod(fields[4]);
      rec.box.w = std::stod(fields[5]);
      rec.box.h = std::stod(fields[6]);
    } catch (const std::exception&) {
      throw MalformedLine(line_no, "numeric field failed to parse in '" + line + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_detections(const FrameDetections& dets, const std::filesystem::path& path,
                      const DetectionMeta& meta) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  char buf[256];
  for (const auto& [frame, list] : dets) {
    for (const auto& d : list) {
      std::snprintf(buf, sizeof(buf), "%d,%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", frame,
                    to_string(d.cls).c_str(), d.score, d.box.x, d.box.y, d.box.w, d.box.h);
      out << buf;
    }
  }
  if (!out) throw IoError("short write to '" + path.string() + "'");

  json m;
  m["image_shape"] = {meta.image_shape.first, meta.image_shape.second};
  m["reference_shape"] = {meta.reference_shape.first, meta.reference_shape.second};
  m["backend"] = meta.backend;
  m["score_threshold"] = meta.score_threshold;
  m["max_detections"] = meta.max_detections;
  m["seed"] = meta.seed;
  std::ofstream mout(path.string() + ".meta.json", std::ios::trunc);
  if (!mout) throw IoError("cannot write detection sidecar for '" + path.string() + "'");
  mout << m.dump(2) << "\n";
}

FrameDetections read_detections(const std::filesystem::path& path, DetectionMeta* meta) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open detections '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();

  FrameDetections dets;
  for (const auto& rec : parse_interchange_records(buffer.str())) {
    Detection d;
    d.box = rec.box;
    d.cls = object_class_from_string(rec.label);
    d.score = rec.score;
    dets[rec.frame_id].push_back(d);
  }

  if (meta) {
    const auto meta_path = path.string() + ".meta.json";
    std::ifstream min(meta_path);
    if (!min) throw MissingFile("missing detection sidecar '" + meta_path + "'");
    try {
      const json m = json::parse(min);
      meta->image_shape = {m.at("image_shape").at(0).get<int>(),
                           m.at("image_shape").at(1).get<int>()};
      meta->reference_shape = {m.at("reference_shape").at(0).get<int>(),
                               m.at("reference_shape").at(1).get<int>()};
      meta->backend = m.at("backend").get<std::string>();
      meta->score_threshold = m.at("score_threshold").get<double>();
      meta->max_detections = m.at("max_detections").get<int>();
      meta->seed = m.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw DecodeError(std::string("bad detection sidecar: ") + e.what());
    }
  }
  return dets;
}

}  // namespace srbench::detect
