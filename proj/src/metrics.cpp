#include "prepart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace prepart {

double pm_avg_utilization(const PmState& pm, int window_begin, int window_end) {
  if (window_end <= window_begin)
    throw std::invalid_argument("utilization window is empty");
  if (window_begin < 0 || window_end > static_cast<int>(pm.slot_usage.size()))
    throw std::invalid_argument("utilization window leaves the slot horizon");
  double sum = 0.0;
  for (int s = window_begin; s < window_end; ++s)
    sum += pm.slot_usage[static_cast<std::size_t>(s)];
  return sum / (window_end - window_begin);
}

namespace {

// Adjacent segments of one parent hosted by different machines imply a move
// of the running VM at the boundary.
std::int64_t boundary_migrations(const Schedule& s) {
  struct Placed {
    int start_slot;
    int pm_id;
  };
  std::map<std::int64_t, std::vector<Placed>> by_parent;
  for (const Assignment& a : s.assignments)
    if (a.segment.is_segment())
      by_parent[a.segment.parent_id].push_back(
          {a.segment.start_slot, a.pm_id});

  std::int64_t count = 0;
  for (auto& [parent, segs] : by_parent) {
    std::sort(segs.begin(), segs.end(),
              [](const Placed& a, const Placed& b) {
                return a.start_slot < b.start_slot;
              });
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].pm_id != segs[i - 1].pm_id) ++count;
  }
  return count;
}

}  // namespace

MetricsReport fleet_metrics(const Schedule& s, const MetricsConfig& cfg) {
  MetricsReport report;
  report.partition_count = s.partition_count;
  report.rejected_count = static_cast<std::int64_t>(s.rejected.size());
  report.migration_count = boundary_migrations(s) + s.reactive_migration_count;

  if (s.assignments.empty()) {
    report.empty = true;
    return report;
  }

  int window_begin = s.assignments.front().segment.start_slot;
  int window_end = s.assignments.front().segment.end_slot;
  for (const Assignment& a : s.assignments) {
    window_begin = std::min(window_begin, a.segment.start_slot);
    window_end = std::max(window_end, a.segment.end_slot);
  }
  report.makespan_slots = window_end - window_begin;

  std::vector<double> utils;
  for (const PmState& pm : s.pm_states) {
    report.capacity_makespan = std::max(report.capacity_makespan, pm.load_cm);
    if (pm.assigned.empty() && !cfg.include_idle_pms) continue;

    PerPmMetrics per;
    per.pm_id = pm.id;
    per.load_cm = pm.load_cm;
    per.avg_utilization = pm_avg_utilization(pm, window_begin, window_end);
    if (!pm.assigned.empty()) {
      int first = pm.assigned.front().start_slot;
      int last = pm.assigned.front().end_slot;
      for (const PlacedSegment& p : pm.assigned) {
        first = std::min(first, p.start_slot);
        last = std::max(last, p.end_slot);
      }
      per.busy_span = last - first;
    }
    report.max_pm_busy_span = std::max(report.max_pm_busy_span, per.busy_span);
    utils.push_back(per.avg_utilization);
    report.per_pm.push_back(per);
  }

  if (!utils.empty()) {
    double mean = 0.0;
    for (double u : utils) mean += u;
    mean /= static_cast<double>(utils.size());
    report.avg_utilization = mean;
    if (mean > 0.0) {
      double var = 0.0;
      for (double u : utils) var += (u - mean) * (u - mean);
      var /= static_cast<double>(utils.size());
      report.imbalance_degree = std::sqrt(var) / mean;
    }
  }
  return report;
}

}  // namespace prepart
