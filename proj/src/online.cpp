#include "prepart/online.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "prepart/placement.hpp"
#include "prepart/rng.hpp"

namespace prepart {

double compute_bd(const std::vector<double>& arrived_cms, int machine_count) {
  if (machine_count < 1)
    throw std::invalid_argument("need at least one machine");
  if (arrived_cms.empty())
    throw std::invalid_argument("need at least one arrival to estimate a bound");
  double max_cm = 0.0;
  double total = 0.0;
  for (double cm : arrived_cms) {
    max_cm = std::max(max_cm, cm);
    total += cm;
  }
  return std::min(max_cm / 2.0, total / machine_count);
}

double compute_bd(const OnlineContext& ctx) {
  return compute_bd(ctx.arrived_cms, ctx.machine_count);
}

namespace {

// Arrival order: by start slot, ties by id. All online drivers process the
// stream in this order.
std::vector<VmRequest> arrival_order(const std::vector<VmRequest>& stream) {
  std::vector<VmRequest> ordered = stream;
  std::sort(ordered.begin(), ordered.end(),
            [](const VmRequest& a, const VmRequest& b) {
              if (a.start_slot != b.start_slot)
                return a.start_slot < b.start_slot;
              return a.id < b.id;
            });
  return ordered;
}

std::int64_t next_free_id(const std::vector<VmRequest>& requests) {
  std::int64_t next = 0;
  for (const VmRequest& r : requests) next = std::max(next, r.id + 1);
  return next;
}

}  // namespace

Schedule prepartition_online(const std::vector<VmRequest>& stream,
                             const SlotConfig& cfg, int machine_count, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  LowestLoadSelector selector(s.pm_states);

  auto place = [&](const VmRequest& seg) {
    const int pm = selector.place(seg);
    if (pm >= 0)
      s.assignments.push_back({seg, pm});
    else
      s.rejected.push_back(seg);
  };

  // Deferred segments, earliest start first (ids break ties).
  auto later = [](const VmRequest& a, const VmRequest& b) {
    return std::tie(a.start_slot, a.id) > std::tie(b.start_slot, b.id);
  };
  std::priority_queue<VmRequest, std::vector<VmRequest>, decltype(later)>
      pending(later);

  std::vector<VmRequest> ordered = arrival_order(stream);
  std::int64_t next_id = next_free_id(ordered);

  auto drain_until = [&](int clock) {
    while (!pending.empty() && pending.top().start_slot <= clock) {
      place(pending.top());
      pending.pop();
    }
  };

  // Running aggregates keep the per-arrival balance value O(1); rescanning
  // the arrival history would make the whole pass quadratic.
  double max_arrived_cm = 0.0;
  double total_arrived_cm = 0.0;
  for (const VmRequest& req : ordered) {
    drain_until(req.start_slot);
    const double cm = capacity_makespan(req);
    max_arrived_cm = std::max(max_arrived_cm, cm);
    total_arrived_cm += cm;
    const double bd = std::min(max_arrived_cm / 2.0,
                               total_arrived_cm / machine_count);
    const double bound = bd / k;
    if (cm > bound + kLoadEpsilon) {
      std::vector<VmRequest> parts = split_segment(req, bound, next_id);
      if (parts.size() <= 1) {
        // Single-slot request: nothing to cut, place it whole.
        place(req);
      } else {
        next_id += static_cast<std::int64_t>(parts.size());
        s.partition_count += static_cast<std::int64_t>(parts.size());
        place(parts.front());
        for (std::size_t i = 1; i < parts.size(); ++i) pending.push(parts[i]);
      }
    } else {
      place(req);
    }
  }
  while (!pending.empty()) {
    place(pending.top());
    pending.pop();
  }
  return s;
}

Schedule olrsa(const std::vector<VmRequest>& stream, const SlotConfig& cfg,
               int machine_count) {
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  LowestLoadSelector selector(s.pm_states);
  for (const VmRequest& req : arrival_order(stream)) {
    const int pm = selector.place(req);
    if (pm >= 0)
      s.assignments.push_back({req, pm});
    else
      s.rejected.push_back(req);
  }
  return s;
}

Schedule random_online(const std::vector<VmRequest>& stream,
                       const SlotConfig& cfg, int machine_count,
                       std::uint64_t seed) {
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  SplitMix64 rng(seed);
  std::vector<int> feasible;
  for (const VmRequest& req : arrival_order(stream)) {
    feasible.clear();
    for (const PmState& pm : s.pm_states)
      if (pm.can_place(req)) feasible.push_back(pm.id);
    if (feasible.empty()) {
      s.rejected.push_back(req);
      continue;
    }
    const int pm = feasible[rng.next_below(feasible.size())];
    s.pm_states[static_cast<std::size_t>(pm)].try_place(req);
    s.assignments.push_back({req, pm});
  }
  return s;
}

Schedule round_robin_online(const std::vector<VmRequest>& stream,
                            const SlotConfig& cfg, int machine_count) {
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  int cursor = 0;
  for (const VmRequest& req : arrival_order(stream)) {
    int placed_on = -1;
    for (int probe = 0; probe < machine_count; ++probe) {
      const int pm = (cursor + probe) % machine_count;
      if (s.pm_states[static_cast<std::size_t>(pm)].try_place(req)) {
        placed_on = pm;
        break;
      }
    }
    if (placed_on >= 0) {
      s.assignments.push_back({req, placed_on});
      cursor = (placed_on + 1) % machine_count;
    } else {
      s.rejected.push_back(req);
    }
  }
  return s;
}

}  // namespace prepart
