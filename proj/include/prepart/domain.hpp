#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prepart {

// Per-slot headroom on the unit-capacity constraint. Demands are ratios of
// small catalog numbers; accumulated float error stays far below this.
inline constexpr double kCapacityEpsilon = 1e-9;

// Tolerance when comparing capacity-makespan sums reached through different
// summation orders.
inline constexpr double kLoadEpsilon = 1e-9;

struct SlotConfig {
  int slot_length_minutes = 5;
  int horizon_slots = 0;
};

void validate_slot_config(const SlotConfig& cfg);

// A reservation over an integer slot interval [start_slot, end_slot) with a
// fixed demand fraction of one machine. Segments cut from a longer request
// carry the original's id in parent_id.
struct VmRequest {
  std::int64_t id = 0;
  std::int64_t parent_id = -1;  // -1 for original requests
  int vm_type = 0;              // catalog type 1..8, 0 when unknown
  int start_slot = 0;
  int end_slot = 0;
  double demand = 0.0;          // in (0, 1]

  int duration_slots() const { return end_slot - start_slot; }
  bool is_segment() const { return parent_id >= 0; }

  friend bool operator==(const VmRequest&, const VmRequest&) = default;
};

// demand x duration, the load a request puts on its host.
double capacity_makespan(const VmRequest& r);

// Wall-clock length of the interval.
long long duration_minutes(const VmRequest& r, const SlotConfig& cfg);

// Rejects zero-length intervals, demands outside (0, 1], and intervals that
// leave [0, horizon]. Throws std::invalid_argument.
void validate_request(const VmRequest& r, const SlotConfig& cfg);

struct PlacedSegment {
  std::int64_t segment_id = 0;
  std::int64_t parent_id = -1;
  int start_slot = 0;
  int end_slot = 0;
  double demand = 0.0;
};

// Per-machine ledger: dense per-slot usage plus the running
// capacity-makespan total of everything placed on it.
struct PmState {
  int id = 0;
  std::vector<double> slot_usage;  // dense over [0, horizon)
  double load_cm = 0.0;
  std::vector<PlacedSegment> assigned;

  PmState() = default;
  PmState(int pm_id, int horizon_slots)
      : id(pm_id), slot_usage(static_cast<std::size_t>(horizon_slots), 0.0) {}

  bool can_place(const VmRequest& seg) const;

  // Adds the segment iff every covered slot stays within capacity; leaves the
  // ledger untouched otherwise.
  bool try_place(const VmRequest& seg);

  // Inverse of try_place. Throws std::invalid_argument for unknown ids.
  void remove_segment(std::int64_t segment_id);
};

bool try_place(PmState& pm, const VmRequest& seg);

struct Assignment {
  VmRequest segment;
  int pm_id = -1;
};

struct Schedule {
  std::vector<Assignment> assignments;
  std::vector<PmState> pm_states;
  std::int64_t partition_count = 0;
  // Whole-VM moves performed by a rebalancing pass (as opposed to the
  // boundary migrations implied by partitioned segments).
  std::int64_t reactive_migration_count = 0;
  std::vector<VmRequest> rejected;

  double fleet_capacity_makespan() const;
  std::size_t used_pm_count() const;
};

std::vector<PmState> make_fleet(int machine_count, int horizon_slots);

// Cuts req into ceil(cm / max_cm) contiguous segments that cover
// [start, end) exactly, all with the parent's demand. Durations differ by at
// most one slot, longer segments first. The count is clamped so every
// segment spans at least one slot. Fresh ids start at first_segment_id.
std::vector<VmRequest> split_segment(const VmRequest& req, double max_cm,
                                     std::int64_t first_segment_id);

}  // namespace prepart
