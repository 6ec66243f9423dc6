#pragma once

#include <cstdint>
#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

// Running state of an online run over a stream of reservations ordered by
// start slot.
struct OnlineContext {
  int machine_count = 1;
  int k = 1;
  std::vector<double> arrived_cms;  // capacity-makespans of arrivals so far
};

// Online lower-bound estimate built from the arrivals seen so far: half the
// largest request load, capped by the average load per machine.
double compute_bd(const std::vector<double>& arrived_cms, int machine_count);
double compute_bd(const OnlineContext& ctx);

// Online proactive partitioning. Per arrival: refresh the bound estimate
// B_d over all arrivals (the arriving request included), and cut the request
// when its load exceeds B_d / k. The first segment starts now and is placed
// immediately; later segments wait in a queue keyed by (start_slot, id) and
// are placed once the stream's clock reaches their start (leftovers drain
// after the last arrival). Every placement goes to the feasible machine with
// the lowest running load. partition_count accumulates the segment count of
// every request that was actually cut.
Schedule prepartition_online(const std::vector<VmRequest>& stream,
                             const SlotConfig& cfg, int machine_count, int k);

// Each arrival goes, whole, to the feasible machine with the lowest running
// load (ties to the lowest machine id).
Schedule olrsa(const std::vector<VmRequest>& stream, const SlotConfig& cfg,
               int machine_count);

// Each arrival goes to a machine drawn uniformly from the feasible ones,
// using the project's deterministic seeded generator.
Schedule random_online(const std::vector<VmRequest>& stream,
                       const SlotConfig& cfg, int machine_count,
                       std::uint64_t seed);

// Cyclic probing in arrival order, same cursor rule as the offline variant.
Schedule round_robin_online(const std::vector<VmRequest>& stream,
                            const SlotConfig& cfg, int machine_count);

}  // namespace prepart
