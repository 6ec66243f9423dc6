#include "prepart/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prepart {

void validate_slot_config(const SlotConfig& cfg) {
  if (cfg.slot_length_minutes < 1)
    throw std::invalid_argument("slot length must be at least one minute");
  if (cfg.horizon_slots < 1)
    throw std::invalid_argument("horizon must be at least one slot");
}

double capacity_makespan(const VmRequest& r) {
  return r.demand * r.duration_slots();
}

long long duration_minutes(const VmRequest& r, const SlotConfig& cfg) {
  return static_cast<long long>(r.duration_slots()) * cfg.slot_length_minutes;
}

void validate_request(const VmRequest& r, const SlotConfig& cfg) {
  if (r.start_slot < 0)
    throw std::invalid_argument("request " + std::to_string(r.id) +
                                ": negative start slot");
  if (r.end_slot <= r.start_slot)
    throw std::invalid_argument("request " + std::to_string(r.id) +
                                ": empty interval");
  if (r.end_slot > cfg.horizon_slots)
    throw std::invalid_argument("request " + std::to_string(r.id) +
                                ": interval leaves the slot horizon");
  if (!(r.demand > 0.0) || r.demand > 1.0)
    throw std::invalid_argument("request " + std::to_string(r.id) +
                                ": demand must lie in (0, 1]");
}

bool PmState::can_place(const VmRequest& seg) const {
  if (seg.start_slot < 0 ||
      seg.end_slot > static_cast<int>(slot_usage.size()) ||
      seg.end_slot <= seg.start_slot)
    throw std::invalid_argument("segment " + std::to_string(seg.id) +
                                " lies outside the machine's slot horizon");
  for (int s = seg.start_slot; s < seg.end_slot; ++s) {
    if (slot_usage[static_cast<std::size_t>(s)] + seg.demand >
        1.0 + kCapacityEpsilon)
      return false;
  }
  return true;
}

bool PmState::try_place(const VmRequest& seg) {
  if (!can_place(seg)) return false;
  for (int s = seg.start_slot; s < seg.end_slot; ++s)
    slot_usage[static_cast<std::size_t>(s)] += seg.demand;
  load_cm += capacity_makespan(seg);
  assigned.push_back({seg.id, seg.parent_id, seg.start_slot, seg.end_slot,
                      seg.demand});
  return true;
}

void PmState::remove_segment(std::int64_t segment_id) {
  auto it = std::find_if(assigned.begin(), assigned.end(),
                         [&](const PlacedSegment& p) {
                           return p.segment_id == segment_id;
                         });
  if (it == assigned.end())
    throw std::invalid_argument("segment " + std::to_string(segment_id) +
                                " is not placed on machine " +
                                std::to_string(id));
  for (int s = it->start_slot; s < it->end_slot; ++s)
    slot_usage[static_cast<std::size_t>(s)] -= it->demand;
  load_cm -= it->demand * (it->end_slot - it->start_slot);
  assigned.erase(it);
}

bool try_place(PmState& pm, const VmRequest& seg) { return pm.try_place(seg); }

double Schedule::fleet_capacity_makespan() const {
  double worst = 0.0;
  for (const PmState& pm : pm_states) worst = std::max(worst, pm.load_cm);
  return worst;
}

std::size_t Schedule::used_pm_count() const {
  std::size_t used = 0;
  for (const PmState& pm : pm_states)
    if (!pm.assigned.empty()) ++used;
  return used;
}

std::vector<PmState> make_fleet(int machine_count, int horizon_slots) {
  if (machine_count < 1)
    throw std::invalid_argument("fleet needs at least one machine");
  if (horizon_slots < 1)
    throw std::invalid_argument("horizon must be at least one slot");
  std::vector<PmState> fleet;
  fleet.reserve(static_cast<std::size_t>(machine_count));
  for (int i = 0; i < machine_count; ++i) fleet.emplace_back(i, horizon_slots);
  return fleet;
}

std::vector<VmRequest> split_segment(const VmRequest& req, double max_cm,
                                     std::int64_t first_segment_id) {
  if (!(max_cm > 0.0))
    throw std::invalid_argument("per-segment capacity-makespan bound must be positive");
  const int duration = req.duration_slots();
  if (duration <= 0)
    throw std::invalid_argument("cannot split an empty interval");

  // ceil(cm / max_cm) pieces; the epsilon keeps exact integer ratios from
  // picking up one spurious extra segment.
  double ratio = capacity_makespan(req) / max_cm;
  long long n = static_cast<long long>(std::ceil(ratio - kLoadEpsilon));
  n = std::clamp(n, 1LL, static_cast<long long>(duration));

  const int base = duration / static_cast<int>(n);
  const int extra = duration % static_cast<int>(n);
  std::vector<VmRequest> segments;
  segments.reserve(static_cast<std::size_t>(n));
  int cursor = req.start_slot;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const int len = base + (i < extra ? 1 : 0);
    VmRequest seg;
    seg.id = first_segment_id + i;
    seg.parent_id = req.id;
    seg.vm_type = req.vm_type;
    seg.start_slot = cursor;
    seg.end_slot = cursor + len;
    seg.demand = req.demand;
    cursor += len;
    segments.push_back(seg);
  }
  return segments;
}

}  // namespace prepart
