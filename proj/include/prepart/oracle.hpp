#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

class InstanceTooLargeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  bool feasible = false;
  double opt_cm = 0.0;
  // Machine index per request, in the order the requests were given.
  std::vector<int> assignment;
  std::uint64_t nodes_explored = 0;
};

struct BruteForceOptions {
  bool prune = true;          // skip branches that cannot beat the incumbent
  double node_guard = 1e7;    // refuse instances with m^n beyond this
};

// Exact minimum fleet capacity-makespan over every whole-request assignment
// (requests are never cut), found by exhaustive search with
// branch-and-bound. Per-slot capacity is enforced, so the result may be
// "infeasible" when no assignment fits. Throws InstanceTooLargeError when
// m^n exceeds the guard.
OracleResult brute_force_opt(const std::vector<VmRequest>& requests,
                             const SlotConfig& cfg, int machine_count,
                             const BruteForceOptions& opts = {});

struct RatioInstance {
  std::vector<VmRequest> requests;
  SlotConfig slot_cfg;
  int machine_count = 2;
  std::uint64_t seed = 0;
};

// Knobs for the random small-instance generator used in ratio experiments.
struct InstanceSpec {
  int min_requests = 2, max_requests = 10;
  int min_machines = 2, max_machines = 3;
  std::vector<double> demands = {0.125, 0.25, 0.5, 1.0};
  int max_duration_slots = 12;
  int max_start_slot = 12;
};

RatioInstance sample_instance(const InstanceSpec& spec, std::uint64_t seed);

// Instances on which slot capacity can never bind: demand-1 requests laid
// out back to back with no pairwise overlap, so machine load is just the sum
// of durations and the setting matches classical multiprocessor scheduling.
RatioInstance sample_classical_instance(std::uint64_t seed);

struct RatioReport {
  int trials = 0;
  int evaluated = 0;
  int skipped_oracle_infeasible = 0;
  int skipped_too_large = 0;
  int skipped_rejections = 0;
  int violations = 0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  std::vector<std::uint64_t> violating_seeds;
};

// Runs `algorithm` against the exact optimum on `trials` generated
// instances and checks algorithm_cm <= bound(instance) * opt_cm + 1e-9.
// Instances the oracle finds infeasible, and runs where the algorithm had to
// reject something, are skipped rather than judged.
RatioReport ratio_harness(
    const std::function<RatioInstance(std::uint64_t)>& make_instance,
    const std::function<Schedule(const RatioInstance&)>& algorithm,
    const std::function<double(const RatioInstance&)>& bound, int trials,
    std::uint64_t seed_base = 1);

}  // namespace prepart
