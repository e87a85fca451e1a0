#include "srbench/imaging/quality.hpp"

#include <cmath>
#include <limits>

#include "srbench/errors.hpp"

namespace srbench::imaging {

double mse(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ShapeMismatch("mse needs equal shapes, got " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
  }
  const auto da = a.data();
  const auto db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(da.size());
}

double psnr(const ImageBuffer& a, const ImageBuffer& b, double peak) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

QualityReport quality_report(const std::vector<ImagePairRef>& pairs, double peak) {
  if (pairs.empty()) throw EmptyInput("quality_report needs at least one image pair");
  std::vector<QualityEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& p : pairs) {
    QualityEntry e;
    e.id = p.id;
    e.mse = mse(*p.restored, *p.reference);
    e.psnr_db = e.mse == 0.0 ? std::numeric_limits<double>::infinity()
                             : 10.0 * std::log10(peak * peak / e.mse);
    entries.push_back(std::move(e));
  }
  return aggregate_quality(std::move(entries));
}

QualityReport aggregate_quality(std::vector<QualityEntry> entries) {
  if (entries.empty()) throw EmptyInput("cannot aggregate an empty quality list");
  QualityReport report;
  double mse_sum = 0.0;
  double psnr_sum = 0.0;
  int finite = 0;
  for (const auto& e : entries) {
    mse_sum += e.mse;
    if (std::isinf(e.psnr_db)) {
      ++report.infinite_psnr_count;
    } else {
      psnr_sum += e.psnr_db;
      ++finite;
    }
  }
  report.mse = mse_sum / static_cast<double>(entries.size());
  report.psnr_db = finite > 0 ? psnr_sum / finite : std::numeric_limits<double>::infinity();
  report.per_image = std::move(entries);
  return report;
}

}  // namespace srbench::imaging
