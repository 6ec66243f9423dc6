#pragma once

#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

// Lower bound on the best reachable fleet capacity-makespan: no machine can
// finish below the average load, and the largest single request must fit on
// some machine whole.
double compute_p0(const std::vector<VmRequest>& requests, int machine_count);

struct PrepartitionConfig {
  int machine_count = 1;
  int k = 4;  // partition granularity; segments aim for load <= P0 / k
  // Round the per-segment load bound up to an integer instead of using the
  // exact ratio P0 / k.
  bool integer_ceiling_threshold = false;
  // Split only requests whose load exceeds P0 itself (a reading under which
  // nothing ever splits, since P0 dominates every single request; kept for
  // comparison runs).
  bool split_guard_p0 = false;
};

// Proactive partitioning: requests whose capacity-makespan exceeds P0 / k
// are cut into contiguous segments no heavier than that bound, then all
// segments are placed heaviest-first, each on the feasible machine with the
// lowest running load.
Schedule prepartition_offline(const std::vector<VmRequest>& requests,
                              const SlotConfig& cfg,
                              const PrepartitionConfig& pc);

// Longest-duration-first list scheduling onto the lowest-loaded feasible
// machine.
Schedule lpt(const std::vector<VmRequest>& requests, const SlotConfig& cfg,
             int machine_count);

// Cyclic placement in arrival order. Starting from a moving cursor, probes
// machines in index order and uses the first feasible one; the cursor then
// points just past the machine used. Requests that fit nowhere are rejected
// (the cursor stays put).
Schedule round_robin_offline(const std::vector<VmRequest>& requests,
                             const SlotConfig& cfg, int machine_count);

struct PmgConfig {
  // Width of the band around the mean load: every machine above
  // mean * (1 - factor) donates VMs as long as it stays at or above that
  // edge; receivers must stay at or below mean * (1 + factor).
  double threshold_factor = 0.1;
};

// LPT followed by one rebalancing sweep that moves whole VMs from loaded
// machines toward the mean.
Schedule pmg(const std::vector<VmRequest>& requests, const SlotConfig& cfg,
             int machine_count, const PmgConfig& mc = {});

// The rebalancing sweep on its own: sheds VMs (heaviest first) from every
// machine loaded above the lower band edge as long as the donor stays at or
// above it, then re-places the shed VMs (heaviest first) onto machines that
// stay within the upper band edge; whatever still has no home goes to the
// lowest-loaded feasible machine unconditionally, or is rejected. Moves that
// end up back on the donor machine do not count as migrations.
void pmg_rebalance(Schedule& s, const PmgConfig& mc = {});

}  // namespace prepart
