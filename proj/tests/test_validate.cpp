#include <doctest.h>

#include <string>
#include <vector>

#include "prepart/experiment.hpp"
#include "prepart/offline.hpp"
#include "prepart/online.hpp"
#include "prepart/validate.hpp"

using namespace prepart;

namespace {

RatioInstance small_instance(std::uint64_t seed) {
  InstanceSpec spec;
  spec.max_requests = 14;
  return sample_instance(spec, seed);
}

}  // namespace

TEST_CASE("every scheduler produces audit-clean schedules") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const RatioInstance inst = small_instance(seed);
    for (const std::string& algo : known_algorithms()) {
      const Schedule s = run_algorithm(algo, inst.requests, inst.slot_cfg,
                                       inst.machine_count, 3, seed);
      const std::vector<std::string> problems =
          verify_schedule(s, inst.requests, inst.slot_cfg);
      for (const std::string& p : problems)
        MESSAGE(algo, " seed ", seed, ": ", p);
      CHECK(problems.empty());
    }
  }
}

TEST_CASE("the audit notices an overfilled slot") {
  const RatioInstance inst = small_instance(3);
  Schedule s = olrsa(inst.requests, inst.slot_cfg, inst.machine_count);
  REQUIRE(verify_schedule(s, inst.requests, inst.slot_cfg).empty());

  // Force an extra copy of a placed segment onto the same machine, bypassing
  // the capacity check.
  REQUIRE(!s.assignments.empty());
  const Assignment& victim = s.assignments.front();
  PmState& pm = s.pm_states[static_cast<std::size_t>(victim.pm_id)];
  for (int slot = victim.segment.start_slot; slot < victim.segment.end_slot;
       ++slot)
    pm.slot_usage[static_cast<std::size_t>(slot)] += 1.0;

  const std::vector<std::string> problems =
      verify_schedule(s, inst.requests, inst.slot_cfg);
  CHECK(!problems.empty());
}

TEST_CASE("the audit notices a tampered partition counter") {
  const RatioInstance inst = small_instance(4);
  PrepartitionConfig pc;
  pc.machine_count = inst.machine_count;
  pc.k = 3;
  Schedule s = prepartition_offline(inst.requests, inst.slot_cfg, pc);
  REQUIRE(verify_schedule(s, inst.requests, inst.slot_cfg).empty());

  s.partition_count += 1;
  CHECK(!verify_schedule(s, inst.requests, inst.slot_cfg).empty());
}

TEST_CASE("the audit notices duplicated and vanished work") {
  const RatioInstance inst = small_instance(5);
  Schedule s = olrsa(inst.requests, inst.slot_cfg, inst.machine_count);
  REQUIRE(!s.assignments.empty());

  Schedule duplicated = s;
  duplicated.assignments.push_back(duplicated.assignments.front());
  CHECK(!verify_schedule(duplicated, inst.requests, inst.slot_cfg).empty());

  Schedule vanished = s;
  const Assignment gone = vanished.assignments.back();
  vanished.assignments.pop_back();
  vanished.pm_states[static_cast<std::size_t>(gone.pm_id)].remove_segment(
      gone.segment.id);
  CHECK(!verify_schedule(vanished, inst.requests, inst.slot_cfg).empty());
}

TEST_CASE("the audit notices a double-booked request") {
  const RatioInstance inst = small_instance(6);
  Schedule s = olrsa(inst.requests, inst.slot_cfg, inst.machine_count);
  REQUIRE(!s.assignments.empty());
  // Mark a placed request as also rejected.
  s.rejected.push_back(s.assignments.front().segment);
  CHECK(!verify_schedule(s, inst.requests, inst.slot_cfg).empty());
}

TEST_CASE("segment bounds hold on random instances for both variants") {
  for (std::uint64_t seed = 10; seed <= 25; ++seed) {
    const RatioInstance inst = small_instance(seed);
    for (int k : {1, 2, 4}) {
      CHECK(check_offline_split_bounds(inst.requests, inst.slot_cfg,
                                       inst.machine_count, k)
                .empty());
      CHECK(check_online_split_bounds(inst.requests, inst.slot_cfg,
                                      inst.machine_count, k)
                .empty());
    }
  }
}

TEST_CASE("over-bound runs are attributed to capacity or slot granularity") {
  // This trial volume is known to produce at least one instance where the
  // online partitioner lands above its worst-case factor; the adjudicator
  // must explain every such run instead of leaving it as a defect.
  const int k = 2;
  const auto make = [](std::uint64_t seed) {
    InstanceSpec spec;
    return sample_instance(spec, seed);
  };
  const auto bound = [k](const RatioInstance& inst) {
    return 1.0 + 1.0 / k - 1.0 / (static_cast<double>(inst.machine_count) * k);
  };
  const RatioReport rep = ratio_harness(
      make,
      [&](const RatioInstance& inst) {
        return prepartition_online(inst.requests, inst.slot_cfg,
                                   inst.machine_count, k);
      },
      bound, 200, 1);
  REQUIRE(rep.violations >= 1);
  const BoundViolationVerdict verdict = adjudicate_bound_violations(
      make, PartitionVariant::online, k, bound, rep.violating_seeds);
  CHECK(verdict.unexplained == 0);
  CHECK(verdict.unexplained_seeds.empty());
  CHECK(verdict.feasibility_gap + verdict.granularity_gap == rep.violations);
}

TEST_CASE("catalog-shaped sampler produces valid instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const RatioInstance inst = sample_mixed_catalog_instance(seed, 120, 12);
    CHECK(inst.machine_count >= 2);
    CHECK(inst.machine_count <= 12);
    CHECK(!inst.requests.empty());
    CHECK(inst.requests.size() <= 120);
    for (const VmRequest& r : inst.requests) {
      CHECK_NOTHROW(validate_request(r, inst.slot_cfg));
      CHECK(r.vm_type >= 1);
      CHECK(r.vm_type <= 8);
    }
  }
}

TEST_CASE("the full property battery passes at reduced volume") {
  ValidationOptions opts;
  opts.schedule_trials = 6;
  opts.ratio_trials = 20;
  opts.seed = 21;
  const std::vector<PropertyResult> results = run_validation(opts);
  REQUIRE(!results.empty());
  for (const PropertyResult& r : results) {
    MESSAGE(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
}
