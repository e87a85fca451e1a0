#pragma once

#include <string>
#include <vector>

#include "srbench/pipeline/report.hpp"

namespace srbench::pipeline {

struct MetricDelta {
  std::string metric;
  double base = 0.0;
  double value = 0.0;
  double abs_delta = 0.0;
  double rel_delta = 0.0;  // (value - base) / base
};

struct RunDelta {
  std::string label;  // sr/scale identity of the compared run
  std::vector<MetricDelta> deltas;
};

/// Deltas of every shared metric against the first report, which acts as the
/// baseline. Reports over different datasets raise IncomparableRuns.
std::vector<RunDelta> compare_runs(const std::vector<ExperimentReport>& reports);

/// Human-readable rendering, one line per metric:
///   mAP@IoU=0.50:0.95: 24.3 -> 27.3 (+3.000, +12.3%)
std::string format_delta_table(const std::vector<RunDelta>& deltas);

}  // namespace srbench::pipeline
