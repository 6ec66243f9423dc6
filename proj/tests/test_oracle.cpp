#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "prepart/offline.hpp"
#include "prepart/oracle.hpp"

using namespace prepart;

namespace {

VmRequest make_request(std::int64_t id, int start, int end, double demand) {
  VmRequest r;
  r.id = id;
  r.start_slot = start;
  r.end_slot = end;
  r.demand = demand;
  return r;
}

SlotConfig slots(int horizon) {
  SlotConfig cfg;
  cfg.horizon_slots = horizon;
  return cfg;
}

}  // namespace

TEST_CASE("exact search balances sequential unit jobs") {
  // Three back-to-back unit jobs on two machines: one machine must take two
  // of them, so the optimum is 2.
  const std::vector<VmRequest> reqs = {make_request(0, 0, 1, 1.0),
                                       make_request(1, 1, 2, 1.0),
                                       make_request(2, 2, 3, 1.0)};
  const OracleResult opt = brute_force_opt(reqs, slots(3), 2);
  REQUIRE(opt.feasible);
  CHECK(opt.opt_cm == doctest::Approx(2.0));
  REQUIRE(opt.assignment.size() == 3);
  for (int pm : opt.assignment) {
    CHECK(pm >= 0);
    CHECK(pm < 2);
  }
}

TEST_CASE("exact search respects per-slot capacity") {
  // Two 0.6-demand requests over the same interval cannot share a machine.
  const std::vector<VmRequest> crowd = {make_request(0, 0, 4, 0.6),
                                        make_request(1, 0, 4, 0.6)};
  const OracleResult split = brute_force_opt(crowd, slots(4), 2);
  REQUIRE(split.feasible);
  CHECK(split.opt_cm == doctest::Approx(2.4));
  CHECK(split.assignment[0] != split.assignment[1]);

  const OracleResult stuck = brute_force_opt(crowd, slots(4), 1);
  CHECK_FALSE(stuck.feasible);

  // Two halves do share, and their loads add.
  const std::vector<VmRequest> pair = {make_request(0, 0, 4, 0.5),
                                       make_request(1, 0, 4, 0.5)};
  const OracleResult shared = brute_force_opt(pair, slots(4), 1);
  REQUIRE(shared.feasible);
  CHECK(shared.opt_cm == doctest::Approx(4.0));
}

TEST_CASE("reported assignment reconstructs the reported optimum") {
  const RatioInstance inst = sample_instance(InstanceSpec{}, 77);
  const OracleResult opt =
      brute_force_opt(inst.requests, inst.slot_cfg, inst.machine_count);
  if (!opt.feasible) return;  // nothing to replay

  std::vector<PmState> fleet =
      make_fleet(inst.machine_count, inst.slot_cfg.horizon_slots);
  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    REQUIRE(opt.assignment[i] >= 0);
    REQUIRE(fleet[static_cast<std::size_t>(opt.assignment[i])].try_place(
        inst.requests[i]));
  }
  double worst = 0.0;
  for (const PmState& pm : fleet) worst = std::max(worst, pm.load_cm);
  CHECK(worst == doctest::Approx(opt.opt_cm));
}

TEST_CASE("search size guard") {
  std::vector<VmRequest> many;
  for (int i = 0; i < 20; ++i) many.push_back(make_request(i, i, i + 1, 0.5));
  CHECK_THROWS_AS(brute_force_opt(many, slots(21), 3), InstanceTooLargeError);

  BruteForceOptions tight;
  tight.node_guard = 3.0;
  const std::vector<VmRequest> few = {make_request(0, 0, 1, 0.5),
                                      make_request(1, 0, 1, 0.5)};
  CHECK_THROWS_AS(brute_force_opt(few, slots(1), 2, tight),
                  InstanceTooLargeError);
  CHECK_THROWS_AS(brute_force_opt(few, slots(1), 0), std::invalid_argument);
}

TEST_CASE("pruning changes the node count, never the answer") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL, 15ULL}) {
    InstanceSpec spec;
    spec.max_requests = 7;
    const RatioInstance inst = sample_instance(spec, seed);

    const OracleResult pruned =
        brute_force_opt(inst.requests, inst.slot_cfg, inst.machine_count);
    BruteForceOptions no_prune;
    no_prune.prune = false;
    const OracleResult full = brute_force_opt(inst.requests, inst.slot_cfg,
                                              inst.machine_count, no_prune);

    REQUIRE(pruned.feasible == full.feasible);
    if (pruned.feasible) {
      CHECK(pruned.opt_cm == doctest::Approx(full.opt_cm).epsilon(1e-12));
      CHECK(pruned.nodes_explored <= full.nodes_explored);
    }
  }
}

TEST_CASE("instance sampler stays inside its spec") {
  InstanceSpec spec;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const RatioInstance inst = sample_instance(spec, seed);
    CHECK(inst.machine_count >= spec.min_machines);
    CHECK(inst.machine_count <= spec.max_machines);
    CHECK(inst.requests.size() >= static_cast<std::size_t>(spec.min_requests));
    CHECK(inst.requests.size() <= static_cast<std::size_t>(spec.max_requests));
    for (const VmRequest& r : inst.requests) {
      CHECK(r.start_slot >= 0);
      CHECK(r.start_slot <= spec.max_start_slot);
      CHECK(r.duration_slots() >= 1);
      CHECK(r.duration_slots() <= spec.max_duration_slots);
      bool known_demand = false;
      for (double d : spec.demands)
        if (r.demand == d) known_demand = true;
      CHECK(known_demand);
    }
  }

  // Same seed, same instance.
  CHECK(sample_instance(spec, 5).requests ==
        sample_instance(spec, 5).requests);
}

TEST_CASE("classical instances are sequential unit-demand chains") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RatioInstance inst = sample_classical_instance(seed);
    CHECK(inst.machine_count >= 2);
    CHECK(inst.machine_count <= 3);
    REQUIRE(!inst.requests.empty());
    CHECK(inst.requests.front().start_slot == 0);
    for (std::size_t i = 0; i < inst.requests.size(); ++i) {
      CHECK(inst.requests[i].demand == doctest::Approx(1.0));
      if (i > 0)
        CHECK(inst.requests[i].start_slot == inst.requests[i - 1].end_slot);
    }
    CHECK(inst.slot_cfg.horizon_slots == inst.requests.back().end_slot);
  }
}

TEST_CASE("ratio harness flags algorithms that bust their bound") {
  // Stacking every job on machine 0 is always feasible on sequential
  // instances and always beats no bound tighter than 1.0.
  const auto stack_everything = [](const RatioInstance& inst) {
    Schedule s;
    s.pm_states = make_fleet(inst.machine_count, inst.slot_cfg.horizon_slots);
    for (const VmRequest& r : inst.requests) {
      REQUIRE(s.pm_states[0].try_place(r));
      s.assignments.push_back({r, 0});
    }
    return s;
  };
  const RatioReport bad = ratio_harness(
      [](std::uint64_t seed) { return sample_classical_instance(seed); },
      stack_everything, [](const RatioInstance&) { return 1.0; }, 25, 1);
  CHECK(bad.evaluated == 25);
  CHECK(bad.violations > 0);
  CHECK(bad.violating_seeds.size() == static_cast<std::size_t>(bad.violations));
  CHECK(bad.max_ratio > 1.0);

  // Longest-first stays within its classical factor on the same instances.
  const RatioReport good = ratio_harness(
      [](std::uint64_t seed) { return sample_classical_instance(seed); },
      [](const RatioInstance& inst) {
        return lpt(inst.requests, inst.slot_cfg, inst.machine_count);
      },
      [](const RatioInstance&) { return 4.0 / 3.0; }, 25, 1);
  CHECK(good.evaluated == 25);
  CHECK(good.violations == 0);
}

TEST_CASE("ratio harness skips runs that reject work") {
  const RatioReport report = ratio_harness(
      [](std::uint64_t seed) { return sample_classical_instance(seed); },
      [](const RatioInstance& inst) {
        Schedule s;
        s.pm_states =
            make_fleet(inst.machine_count, inst.slot_cfg.horizon_slots);
        s.rejected = inst.requests;
        return s;
      },
      [](const RatioInstance&) { return 1.0; }, 10, 1);
  CHECK(report.evaluated == 0);
  CHECK(report.skipped_rejections == 10);
  CHECK(report.violations == 0);
}
