#include "srbench/pipeline/compare.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "srbench/errors.hpp"

namespace srbench::pipeline {
namespace {

std::string dataset_of(const ExperimentReport& r) {
  if (r.config_echo.contains("dataset")) return r.config_echo["dataset"].get<std::string>();
  return "";
}

struct NamedMetric {
  std::string name;
  double value;
};

std::vector<NamedMetric> metrics_of(const ExperimentReport& r) {
  std::vector<NamedMetric> out;
  out.push_back({"mAP@IoU=0.50:0.95", r.eval.map_50_95});
  out.push_back({"mAP@IoU=0.50", r.eval.map_50});
  for (const auto& [tau, v] : r.eval.mean_iou_at) {
    if (!v.defined) continue;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "meanIoU@%g", tau);
    out.push_back({buf, v.percent});
  }
  if (r.quality) {
    if (std::isfinite(r.quality->psnr_db)) out.push_back({"PSNR", r.quality->psnr_db});
    out.push_back({"MSE", r.quality->mse});
  }
  return out;
}

}  // namespace

std::vector<RunDelta> compare_runs(const std::vector<ExperimentReport>& reports) {
  if (reports.size() < 2) throw IncomparableRuns("need a baseline and at least one other run");
  const auto& base = reports.front();
  const std::string base_dataset = dataset_of(base);
  const auto base_metrics = metrics_of(base);

  std::vector<RunDelta> out;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto& run = reports[i];
    if (dataset_of(run) != base_dataset) {
      throw IncomparableRuns("runs cover different datasets ('" + base_dataset + "' vs '" +
                             dataset_of(run) + "')");
    }
    RunDelta delta;
    delta.label = run.sr + (run.scale == "-" ? "" : " " + run.scale);
    const auto run_metrics = metrics_of(run);
    for (const auto& bm : base_metrics) {
      for (const auto& rm : run_metrics) {
        if (rm.name != bm.name) continue;
        MetricDelta d;
        d.metric = bm.name;
        d.base = bm.value;
        d.value = rm.value;
        d.abs_delta = rm.value - bm.value;
        d.rel_delta = bm.value != 0.0 ? d.abs_delta / bm.value
                                      : std::numeric_limits<double>::quiet_NaN();
        delta.deltas.push_back(d);
      }
    }
    out.push_back(std::move(delta));
  }
  return out;
}

std::string format_delta_table(const std::vector<RunDelta>& deltas) {
  std::ostringstream out;
  char buf[160];
  for (const auto& run : deltas) {
    out << "vs baseline: " << run.label << "\n";
    for (const auto& d : run.deltas) {
      const double rel_pct = d.rel_delta * 100.0;
      std::snprintf(buf, sizeof(buf), "  %s: %.6g -> %.6g (%+.6g, %+.1f%%)\n", d.metric.c_str(),
                    d.base, d.value, d.abs_delta, rel_pct);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace srbench::pipeline
