#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

struct VmCatalogEntry {
  double compute_units = 0.0;
  double memory_gb = 0.0;
  double storage_gb = 0.0;
  std::string label;
};

struct PmCatalogEntry {
  double compute_units = 0.0;
  double memory_gb = 0.0;
  double storage_gb = 0.0;
  std::string label;
};

// Eight EC2-style VM shapes and the three machine shapes they are hosted on.
// A VM's demand fraction on a machine is vm.compute_units / pm.compute_units.
const std::array<VmCatalogEntry, 8>& ec2_vm_catalog();
const std::array<PmCatalogEntry, 3>& ec2_pm_catalog();
const VmCatalogEntry& vm_type_entry(int type);  // 1-based, throws on bad type
const PmCatalogEntry& pm_type_entry(int type);  // 1-based, throws on bad type
const VmCatalogEntry* find_vm_type(std::string_view label);
const PmCatalogEntry* find_pm_type(std::string_view label);

// One job line from a Standard Workload Format trace (the four fields this
// project consumes).
struct TraceRecord {
  long long job_id = 0;
  long long submit_time_s = 0;
  long long run_time_s = 0;
  long long allocated_processors = 0;
};

class SwfParseError : public std::runtime_error {
 public:
  SwfParseError(std::size_t line, const std::string& message)
      : std::runtime_error("swf line " + std::to_string(line) + ": " + message),
        line_number(line) {}
  std::size_t line_number;
};

struct SwfParseResult {
  std::vector<TraceRecord> records;
  // Job lines whose run time or processor count was zero/negative (SWF uses
  // -1 for unknown); they carry no load and are dropped.
  std::size_t skipped = 0;
};

// Parses SWF text: ';'-prefixed comment lines and blank lines are ignored,
// every other line must carry the standard 18 whitespace-separated numeric
// fields. Malformed lines raise SwfParseError with the line number.
SwfParseResult parse_swf(std::istream& in);
SwfParseResult parse_swf_file(const std::string& path);

long long max_processors(const std::vector<TraceRecord>& records);

struct TraceConversion {
  std::vector<VmRequest> requests;
  // Jobs asking for more processors than the reference cluster size.
  std::size_t oversized = 0;
};

// Maps trace jobs onto slotted reservations: start slots round down, run
// times round up to at least one slot, demand is the processor share of
// cluster_procs. Jobs whose share exceeds 1 are dropped and counted.
TraceConversion trace_to_requests(const std::vector<TraceRecord>& records,
                                  const SlotConfig& cfg,
                                  long long cluster_procs);

struct SyntheticSpec {
  int n_requests = 0;
  double duration_mean_slots = 864.0;
  double duration_std_slots = 288.0;
  int start_window_slots = 2016;
  // Relative draw weights for the eight VM shapes; normalized before use.
  std::array<double, 8> vm_type_weights = {1, 1, 1, 1, 1, 1, 1, 1};
  std::uint64_t seed = 1;
  // Machine shape the demand fraction is computed against. The default
  // (type 2, 52 compute units) hosts every VM shape in the catalog.
  int pm_type = 2;
  // Also require the VM shape's memory and storage to fit the machine shape.
  bool check_memory_storage = false;
};

// Horizon wide enough for the start window plus essentially every duration
// draw (mean + 6 sigma).
int synthetic_horizon_hint(const SyntheticSpec& spec);

// Deterministic given the seed. Per request, in order: duration (normal,
// rounded to the nearest slot, clamped to [1, horizon]), start (uniform
// integers over [0, start_window]), VM shape (weighted); intervals running
// past the horizon are truncated to it. Demand is the shape's compute share
// of the configured machine shape.
std::vector<VmRequest> generate_synthetic(const SyntheticSpec& spec,
                                          const SlotConfig& cfg);

}  // namespace prepart
