#pragma once

#include <cstdint>
#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

struct PerPmMetrics {
  int pm_id = 0;
  double avg_utilization = 0.0;
  double load_cm = 0.0;
  int busy_span = 0;  // last end - first start of the segments it hosts
};

struct MetricsConfig {
  // When true, machines that host nothing still enter the utilization mean
  // and the imbalance statistic (as zeros).
  bool include_idle_pms = false;
};

struct MetricsReport {
  bool empty = false;  // schedule had no placements at all
  double avg_utilization = 0.0;
  double imbalance_degree = 0.0;  // coefficient of variation of per-PM utilization
  int makespan_slots = 0;         // fleet window: first start to last end
  int max_pm_busy_span = 0;       // widest single-machine busy window
  double capacity_makespan = 0.0; // max per-PM load_cm
  std::int64_t partition_count = 0;
  std::int64_t migration_count = 0;
  double wall_clock_ms = 0.0;     // filled in by the caller that timed the run
  std::int64_t rejected_count = 0;
  std::vector<PerPmMetrics> per_pm;
};

// Mean slot usage over [window_begin, window_end). Throws on empty windows.
double pm_avg_utilization(const PmState& pm, int window_begin, int window_end);

// Aggregates a finished schedule. The observation window runs from the
// earliest placed start to the latest placed end; machines that host nothing
// are skipped (unless configured otherwise). migration_count combines the
// per-parent count of adjacent segments landing on different machines with
// any whole-VM moves a rebalancing pass recorded.
MetricsReport fleet_metrics(const Schedule& s, const MetricsConfig& cfg = {});

}  // namespace prepart
