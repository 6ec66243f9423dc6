#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prepart/domain.hpp"
#include "prepart/metrics.hpp"
#include "prepart/workload.hpp"

namespace prepart {

// The eight scheduler names the runner understands:
//   offline: rr, lpt, pmg, prepartition
//   online:  random, rr_on, olrsa, prepartition_on
const std::vector<std::string>& known_algorithms();
bool is_known_algorithm(std::string_view name);
bool algorithm_uses_k(std::string_view name);   // the two prepartition variants
bool algorithm_uses_seed(std::string_view name);  // random only

// Runs one scheduler over one workload. k is ignored by schedulers that do
// not partition; seed only feeds the random baseline.
Schedule run_algorithm(std::string_view name,
                       const std::vector<VmRequest>& requests,
                       const SlotConfig& cfg, int machine_count, int k,
                       std::uint64_t seed);

struct ExperimentConfig {
  std::optional<SyntheticSpec> synthetic;  // exactly one source must be set
  std::string trace_path;
  std::vector<std::string> algorithms;
  int machine_count = 10;
  std::vector<int> k_values = {4};
  int repeats = 1;
  std::uint64_t seed = 1;
  int slot_length_minutes = 5;
  long long cluster_procs = 0;  // 0: use the widest job in the trace
  // A run whose rejected share of total demand-time exceeds this makes the
  // CLI exit nonzero.
  double reject_rate_limit = 1.0;
  std::string out_path;       // empty: stdout
  std::string format = "csv"; // csv | jsonl
};

// One output row, flattened to the columns the CSV carries. Counts and slot
// spans are integral on raw rows but become fractional means on aggregate
// rows, so everything numeric is a double.
struct ResultRow {
  std::string algo;
  int n_vms = 0;
  int m_pms = 0;
  int k = 0;             // 0 for schedulers without a partition knob
  bool aggregate = false;  // mean over the repeats of one (algo, k) cell
  std::uint64_t seed = 0;  // per-repeat seed; base seed on aggregate rows
  double avg_util = 0.0;
  double imbalance = 0.0;
  double fleet_makespan = 0.0;
  double max_pm_span = 0.0;
  double capacity_makespan = 0.0;
  double partitions = 0.0;
  double migrations = 0.0;
  double wall_ms = 0.0;
  double rejected = 0.0;
  double reject_rate = 0.0;  // rejected share of total demand-time
};

ResultRow make_result_row(std::string algo, int n_vms, int m_pms, int k,
                          std::uint64_t seed, const MetricsReport& metrics);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  double worst_reject_rate = 0.0;
};

// Runs the full (algorithm x k x repeat) matrix. Workload seeds derive as
// seed + repeat; the same derived seed feeds the random baseline. Raw rows
// come out ordered by (algorithm as listed, k as listed, repeat), each cell
// followed by its aggregate row.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string to_csv_row(const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows);

// Flat key = value config file ('#' comments). Keys match the CLI flags;
// flags given on the command line override file entries.
ExperimentConfig load_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value);

// "n=400,mu=864,sigma=288,window=2016,pm_type=2,seed=1,gate=0,
//  weights=1:1:1:1:1:1:1:1" -- everything but n is optional.
SyntheticSpec parse_synthetic_arg(std::string_view text);

// Builds the workload a run sees: synthetic specs get their horizon hint,
// traces are parsed and converted (demand share of cluster_procs).
struct WorkloadBundle {
  std::vector<VmRequest> requests;
  SlotConfig slot_cfg;
};
WorkloadBundle build_workload(const ExperimentConfig& cfg,
                              std::uint64_t derived_seed);

}  // namespace prepart
