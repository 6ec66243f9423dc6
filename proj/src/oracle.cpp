#include "prepart/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "prepart/rng.hpp"

namespace prepart {

namespace {

struct SearchState {
  const std::vector<const VmRequest*>* order = nullptr;
  std::vector<PmState>* fleet = nullptr;
  bool prune = true;
  double best = 0.0;
  bool found = false;
  std::vector<int> current;
  std::vector<int> best_assignment;
  std::uint64_t nodes = 0;
};

void search(SearchState& st, std::size_t depth, double partial_max) {
  const auto& order = *st.order;
  if (depth == order.size()) {
    if (!st.found || partial_max < st.best) {
      st.found = true;
      st.best = partial_max;
      st.best_assignment = st.current;
    }
    return;
  }
  const VmRequest& req = *order[depth];
  const double cm = capacity_makespan(req);
  for (PmState& pm : *st.fleet) {
    const double would_be = std::max(partial_max, pm.load_cm + cm);
    if (st.prune && st.found && would_be >= st.best) continue;
    if (!pm.try_place(req)) continue;
    ++st.nodes;
    st.current[depth] = pm.id;
    search(st, depth + 1, would_be);
    pm.remove_segment(req.id);
  }
}

}  // namespace

OracleResult brute_force_opt(const std::vector<VmRequest>& requests,
                             const SlotConfig& cfg, int machine_count,
                             const BruteForceOptions& opts) {
  if (machine_count < 1)
    throw std::invalid_argument("need at least one machine");
  const double tree_size =
      std::pow(static_cast<double>(machine_count),
               static_cast<double>(requests.size()));
  if (tree_size > opts.node_guard)
    throw InstanceTooLargeError(
        "instance too large for exhaustive search: " +
        std::to_string(machine_count) + "^" +
        std::to_string(requests.size()) + " assignments");

  // Heavy requests first tightens the incumbent early; the reported
  // assignment is mapped back to input order.
  std::vector<std::size_t> perm(requests.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return capacity_makespan(requests[a]) > capacity_makespan(requests[b]);
  });
  std::vector<const VmRequest*> order(requests.size());
  for (std::size_t i = 0; i < perm.size(); ++i) order[i] = &requests[perm[i]];

  std::vector<PmState> fleet = make_fleet(machine_count, cfg.horizon_slots);
  SearchState st;
  st.order = &order;
  st.fleet = &fleet;
  st.prune = opts.prune;
  st.current.assign(requests.size(), -1);
  search(st, 0, 0.0);

  OracleResult result;
  result.nodes_explored = st.nodes;
  result.feasible = st.found;
  if (st.found) {
    result.opt_cm = st.best;
    result.assignment.assign(requests.size(), -1);
    for (std::size_t i = 0; i < perm.size(); ++i)
      result.assignment[perm[i]] = st.best_assignment[i];
  }
  return result;
}

RatioInstance sample_instance(const InstanceSpec& spec, std::uint64_t seed) {
  if (spec.demands.empty())
    throw std::invalid_argument("instance generator needs demand choices");
  SplitMix64 rng(seed);
  RatioInstance inst;
  inst.seed = seed;
  inst.machine_count = static_cast<int>(
      rng.next_int(spec.min_machines, spec.max_machines));
  const int n =
      static_cast<int>(rng.next_int(spec.min_requests, spec.max_requests));
  inst.slot_cfg.horizon_slots = spec.max_start_slot + spec.max_duration_slots;
  for (int i = 0; i < n; ++i) {
    VmRequest r;
    r.id = i;
    r.start_slot = static_cast<int>(rng.next_int(0, spec.max_start_slot));
    r.end_slot = r.start_slot + static_cast<int>(
                                    rng.next_int(1, spec.max_duration_slots));
    r.demand = spec.demands[rng.next_below(spec.demands.size())];
    validate_request(r, inst.slot_cfg);
    inst.requests.push_back(r);
  }
  return inst;
}

RatioInstance sample_classical_instance(std::uint64_t seed) {
  SplitMix64 rng(seed);
  RatioInstance inst;
  inst.seed = seed;
  inst.machine_count = static_cast<int>(rng.next_int(2, 3));
  const int n = static_cast<int>(rng.next_int(3, 8));
  int cursor = 0;
  for (int i = 0; i < n; ++i) {
    VmRequest r;
    r.id = i;
    r.demand = 1.0;
    r.start_slot = cursor;
    r.end_slot = cursor + static_cast<int>(rng.next_int(1, 12));
    cursor = r.end_slot;
    inst.requests.push_back(r);
  }
  inst.slot_cfg.horizon_slots = cursor;
  return inst;
}

RatioReport ratio_harness(
    const std::function<RatioInstance(std::uint64_t)>& make_instance,
    const std::function<Schedule(const RatioInstance&)>& algorithm,
    const std::function<double(const RatioInstance&)>& bound, int trials,
    std::uint64_t seed_base) {
  RatioReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(t);
    const RatioInstance inst = make_instance(seed);

    OracleResult opt;
    try {
      opt = brute_force_opt(inst.requests, inst.slot_cfg, inst.machine_count);
    } catch (const InstanceTooLargeError&) {
      ++report.skipped_too_large;
      continue;
    }
    if (!opt.feasible) {
      ++report.skipped_oracle_infeasible;
      continue;
    }

    const Schedule run = algorithm(inst);
    if (!run.rejected.empty()) {
      ++report.skipped_rejections;
      continue;
    }

    ++report.evaluated;
    const double cm = run.fleet_capacity_makespan();
    const double ratio = cm / opt.opt_cm;
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (cm > bound(inst) * opt.opt_cm + 1e-9) {
      ++report.violations;
      report.violating_seeds.push_back(seed);
    }
  }
  return report;
}

}  // namespace prepart
