#include "prepart/offline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "prepart/placement.hpp"

namespace prepart {

double compute_p0(const std::vector<VmRequest>& requests, int machine_count) {
  if (machine_count < 1)
    throw std::invalid_argument("need at least one machine");
  if (requests.empty())
    throw std::invalid_argument("need at least one request to bound the optimum");
  double max_cm = 0.0;
  double total = 0.0;
  for (const VmRequest& r : requests) {
    const double cm = capacity_makespan(r);
    max_cm = std::max(max_cm, cm);
    total += cm;
  }
  return std::max(max_cm, total / machine_count);
}

namespace {

std::int64_t next_free_id(const std::vector<VmRequest>& requests) {
  std::int64_t next = 0;
  for (const VmRequest& r : requests) next = std::max(next, r.id + 1);
  return next;
}

Schedule place_all(std::vector<VmRequest> items, const SlotConfig& cfg,
                   int machine_count) {
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  LowestLoadSelector selector(s.pm_states);
  for (const VmRequest& item : items) {
    const int pm = selector.place(item);
    if (pm >= 0)
      s.assignments.push_back({item, pm});
    else
      s.rejected.push_back(item);
  }
  return s;
}

}  // namespace

Schedule prepartition_offline(const std::vector<VmRequest>& requests,
                              const SlotConfig& cfg,
                              const PrepartitionConfig& pc) {
  if (pc.k < 1) throw std::invalid_argument("k must be at least 1");
  if (requests.empty()) {
    Schedule s;
    s.pm_states = make_fleet(pc.machine_count, cfg.horizon_slots);
    return s;
  }

  const double p0 = compute_p0(requests, pc.machine_count);
  double bound = p0 / pc.k;
  if (pc.integer_ceiling_threshold) bound = std::ceil(bound);

  std::int64_t next_id = next_free_id(requests);
  std::int64_t partitions = 0;
  std::vector<VmRequest> items;
  items.reserve(requests.size());
  for (const VmRequest& r : requests) {
    const double cm = capacity_makespan(r);
    const double guard = pc.split_guard_p0 ? p0 : bound;
    if (cm > guard + kLoadEpsilon) {
      std::vector<VmRequest> parts = split_segment(r, bound, next_id);
      if (parts.size() <= 1) {
        // Single-slot request: nothing to cut.
        items.push_back(r);
      } else {
        next_id += static_cast<std::int64_t>(parts.size());
        partitions += static_cast<std::int64_t>(parts.size());
        items.insert(items.end(), parts.begin(), parts.end());
      }
    } else {
      items.push_back(r);
    }
  }

  std::sort(items.begin(), items.end(),
            [](const VmRequest& a, const VmRequest& b) {
              const double ca = capacity_makespan(a);
              const double cb = capacity_makespan(b);
              if (ca != cb) return ca > cb;
              if (a.start_slot != b.start_slot) return a.start_slot < b.start_slot;
              return a.id < b.id;
            });

  Schedule s = place_all(std::move(items), cfg, pc.machine_count);
  s.partition_count = partitions;
  return s;
}

Schedule lpt(const std::vector<VmRequest>& requests, const SlotConfig& cfg,
             int machine_count) {
  std::vector<VmRequest> items = requests;
  std::sort(items.begin(), items.end(),
            [](const VmRequest& a, const VmRequest& b) {
              if (a.duration_slots() != b.duration_slots())
                return a.duration_slots() > b.duration_slots();
              return a.id < b.id;
            });
  return place_all(std::move(items), cfg, machine_count);
}

Schedule round_robin_offline(const std::vector<VmRequest>& requests,
                             const SlotConfig& cfg, int machine_count) {
  Schedule s;
  s.pm_states = make_fleet(machine_count, cfg.horizon_slots);
  int cursor = 0;
  for (const VmRequest& r : requests) {
    int placed_on = -1;
    for (int probe = 0; probe < machine_count; ++probe) {
      const int pm = (cursor + probe) % machine_count;
      if (s.pm_states[static_cast<std::size_t>(pm)].try_place(r)) {
        placed_on = pm;
        break;
      }
    }
    if (placed_on >= 0) {
      s.assignments.push_back({r, placed_on});
      cursor = (placed_on + 1) % machine_count;
    } else {
      s.rejected.push_back(r);
    }
  }
  return s;
}

Schedule pmg(const std::vector<VmRequest>& requests, const SlotConfig& cfg,
             int machine_count, const PmgConfig& mc) {
  Schedule s = lpt(requests, cfg, machine_count);
  pmg_rebalance(s, mc);
  return s;
}

void pmg_rebalance(Schedule& s, const PmgConfig& mc) {
  if (s.pm_states.empty() || s.assignments.empty()) return;
  const auto m = static_cast<double>(s.pm_states.size());
  double total = 0.0;
  for (const PmState& pm : s.pm_states) total += pm.load_cm;
  const double avg = total / m;
  const double up = avg * (1.0 + mc.threshold_factor);
  const double low = avg * (1.0 - mc.threshold_factor);

  std::unordered_map<std::int64_t, std::size_t> assignment_of;
  for (std::size_t i = 0; i < s.assignments.size(); ++i)
    assignment_of[s.assignments[i].segment.id] = i;

  // Donors: everything loaded above the lower band edge, heaviest first.
  std::vector<int> donors;
  for (const PmState& pm : s.pm_states)
    if (pm.load_cm > low + kLoadEpsilon) donors.push_back(pm.id);
  std::vector<double> donor_load(s.pm_states.size());
  for (const PmState& pm : s.pm_states)
    donor_load[static_cast<std::size_t>(pm.id)] = pm.load_cm;
  std::sort(donors.begin(), donors.end(), [&](int a, int b) {
    const double la = donor_load[static_cast<std::size_t>(a)];
    const double lb = donor_load[static_cast<std::size_t>(b)];
    if (la != lb) return la > lb;
    return a < b;
  });

  struct Move {
    VmRequest vm;
    int from_pm;
  };
  std::vector<Move> shed;
  for (int pm_id : donors) {
    const PmState& pm = s.pm_states[static_cast<std::size_t>(pm_id)];
    for (const PlacedSegment& cand : pm.assigned)
      shed.push_back({s.assignments[assignment_of.at(cand.segment_id)].segment,
                      pm_id});
  }

  std::sort(shed.begin(), shed.end(), [](const Move& a, const Move& b) {
    const double ca = capacity_makespan(a.vm);
    const double cb = capacity_makespan(b.vm);
    if (ca != cb) return ca > cb;
    return a.vm.id < b.vm.id;
  });

  auto pm_order_by_load = [&]() {
    std::vector<int> order(s.pm_states.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double la = s.pm_states[static_cast<std::size_t>(a)].load_cm;
      const double lb = s.pm_states[static_cast<std::size_t>(b)].load_cm;
      if (la != lb) return la < lb;
      return a < b;
    });
    return order;
  };

  // Moves are atomic: a VM leaves its donor only for a receiver that takes it
  // within the band, otherwise it goes straight back home. Rebalancing can
  // therefore never unplace anything.
  std::int64_t migrations = 0;
  for (const Move& mv : shed) {
    PmState& donor = s.pm_states[static_cast<std::size_t>(mv.from_pm)];
    const double cm = capacity_makespan(mv.vm);
    // Draining this VM now would push the donor below the band.
    if (donor.load_cm - cm < low - kLoadEpsilon) continue;
    donor.remove_segment(mv.vm.id);

    int target = -1;
    for (int pm_id : pm_order_by_load()) {
      PmState& pm = s.pm_states[static_cast<std::size_t>(pm_id)];
      if (!(pm.load_cm < up)) continue;
      if (pm.load_cm + cm > up + kLoadEpsilon) continue;
      if (pm.try_place(mv.vm)) {
        target = pm_id;
        break;
      }
    }
    if (target < 0) {
      // The slots it just vacated are still free.
      donor.try_place(mv.vm);
      continue;
    }
    s.assignments[assignment_of.at(mv.vm.id)].pm_id = target;
    if (target != mv.from_pm) ++migrations;
  }

  s.reactive_migration_count += migrations;
}

}  // namespace prepart
