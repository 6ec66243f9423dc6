#include "prepart/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "prepart/rng.hpp"

namespace prepart {

const std::array<VmCatalogEntry, 8>& ec2_vm_catalog() {
  static const std::array<VmCatalogEntry, 8> catalog = {{
      {1.0, 1.875, 211.25, "1-1"},
      {4.0, 7.5, 845.0, "1-2"},
      {8.0, 15.0, 1690.0, "1-3"},
      {6.5, 17.1, 422.5, "2-1"},
      {13.0, 34.2, 845.0, "2-2"},
      {26.0, 68.4, 1690.0, "2-3"},
      {5.0, 1.875, 422.5, "3-1"},
      {20.0, 7.0, 1690.0, "3-2"},
  }};
  return catalog;
}

const std::array<PmCatalogEntry, 3>& ec2_pm_catalog() {
  static const std::array<PmCatalogEntry, 3> catalog = {{
      {16.0, 30.0, 3380.0, "1"},
      {52.0, 136.8, 3380.0, "2"},
      {40.0, 14.0, 3380.0, "3"},
  }};
  return catalog;
}

const VmCatalogEntry& vm_type_entry(int type) {
  const auto& catalog = ec2_vm_catalog();
  if (type < 1 || type > static_cast<int>(catalog.size()))
    throw std::invalid_argument("unknown vm type " + std::to_string(type));
  return catalog[static_cast<std::size_t>(type - 1)];
}

const PmCatalogEntry& pm_type_entry(int type) {
  const auto& catalog = ec2_pm_catalog();
  if (type < 1 || type > static_cast<int>(catalog.size()))
    throw std::invalid_argument("unknown pm type " + std::to_string(type));
  return catalog[static_cast<std::size_t>(type - 1)];
}

const VmCatalogEntry* find_vm_type(std::string_view label) {
  for (const VmCatalogEntry& e : ec2_vm_catalog())
    if (e.label == label) return &e;
  return nullptr;
}

const PmCatalogEntry* find_pm_type(std::string_view label) {
  for (const PmCatalogEntry& e : ec2_pm_catalog())
    if (e.label == label) return &e;
  return nullptr;
}

namespace {
// Standard Workload Format carries 18 fields per job line.
constexpr int kSwfFieldCount = 18;
}  // namespace

SwfParseResult parse_swf(std::istream& in) {
  SwfParseResult result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == ';') continue;          // comment / header

    std::istringstream fields(line);
    std::array<double, kSwfFieldCount> value{};
    for (int i = 0; i < kSwfFieldCount; ++i) {
      if (!(fields >> value[static_cast<std::size_t>(i)]))
        throw SwfParseError(line_number,
                            "expected " + std::to_string(kSwfFieldCount) +
                                " numeric fields, failed at field " +
                                std::to_string(i + 1));
    }

    TraceRecord rec;
    rec.job_id = static_cast<long long>(value[0]);
    rec.submit_time_s = static_cast<long long>(value[1]);
    rec.run_time_s = static_cast<long long>(value[3]);
    rec.allocated_processors = static_cast<long long>(value[4]);
    if (rec.run_time_s <= 0 || rec.allocated_processors <= 0) {
      ++result.skipped;
      continue;
    }
    result.records.push_back(rec);
  }
  return result;
}

SwfParseResult parse_swf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_swf(in);
}

long long max_processors(const std::vector<TraceRecord>& records) {
  long long widest = 0;
  for (const TraceRecord& r : records)
    widest = std::max(widest, r.allocated_processors);
  return widest;
}

TraceConversion trace_to_requests(const std::vector<TraceRecord>& records,
                                  const SlotConfig& cfg,
                                  long long cluster_procs) {
  if (cluster_procs < 1)
    throw std::invalid_argument("reference cluster size must be positive");
  if (cfg.slot_length_minutes < 1)
    throw std::invalid_argument("slot length must be at least one minute");
  const long long slot_seconds = 60LL * cfg.slot_length_minutes;

  TraceConversion out;
  out.requests.reserve(records.size());
  for (const TraceRecord& rec : records) {
    if (rec.allocated_processors > cluster_procs) {
      ++out.oversized;
      continue;
    }
    VmRequest r;
    r.id = rec.job_id;
    r.start_slot = static_cast<int>(rec.submit_time_s / slot_seconds);
    const long long slots =
        std::max(1LL, (rec.run_time_s + slot_seconds - 1) / slot_seconds);
    r.end_slot = r.start_slot + static_cast<int>(slots);
    r.demand = static_cast<double>(rec.allocated_processors) /
               static_cast<double>(cluster_procs);
    out.requests.push_back(r);
  }
  return out;
}

int synthetic_horizon_hint(const SyntheticSpec& spec) {
  const double tail =
      spec.duration_mean_slots + 6.0 * spec.duration_std_slots;
  return spec.start_window_slots + std::max(1, static_cast<int>(std::ceil(tail)));
}

std::vector<VmRequest> generate_synthetic(const SyntheticSpec& spec,
                                          const SlotConfig& cfg) {
  validate_slot_config(cfg);
  if (spec.n_requests < 0)
    throw std::invalid_argument("request count must be non-negative");
  if (!(spec.duration_mean_slots > 0.0))
    throw std::invalid_argument("mean duration must be positive");
  if (spec.duration_std_slots < 0.0)
    throw std::invalid_argument("duration spread must be non-negative");
  if (spec.start_window_slots < 0 ||
      spec.start_window_slots > cfg.horizon_slots - 1)
    throw std::invalid_argument(
        "start window must fit the horizon with room for one slot");

  const PmCatalogEntry& host = pm_type_entry(spec.pm_type);
  double weight_sum = 0.0;
  for (std::size_t t = 0; t < spec.vm_type_weights.size(); ++t) {
    const double w = spec.vm_type_weights[t];
    if (w < 0.0) throw std::invalid_argument("vm type weights must be >= 0");
    if (w == 0.0) continue;
    weight_sum += w;
    const VmCatalogEntry& vm = vm_type_entry(static_cast<int>(t) + 1);
    if (vm.compute_units > host.compute_units)
      throw std::invalid_argument("vm type " + vm.label +
                                  " does not fit machine type " + host.label);
    if (spec.check_memory_storage &&
        (vm.memory_gb > host.memory_gb || vm.storage_gb > host.storage_gb))
      throw std::invalid_argument("vm type " + vm.label +
                                  " exceeds memory/storage of machine type " +
                                  host.label);
  }
  if (weight_sum <= 0.0)
    throw std::invalid_argument("at least one vm type weight must be positive");

  SplitMix64 rng(spec.seed);
  std::vector<VmRequest> requests;
  requests.reserve(static_cast<std::size_t>(spec.n_requests));
  for (int i = 0; i < spec.n_requests; ++i) {
    const double draw =
        rng.next_normal(spec.duration_mean_slots, spec.duration_std_slots);
    long long duration = std::llround(draw);
    duration = std::clamp(duration, 1LL,
                          static_cast<long long>(cfg.horizon_slots));

    const int start =
        static_cast<int>(rng.next_int(0, spec.start_window_slots));

    double pick = rng.next_double() * weight_sum;
    int type = 0;
    for (std::size_t t = 0; t < spec.vm_type_weights.size(); ++t) {
      pick -= spec.vm_type_weights[t];
      if (pick < 0.0) {
        type = static_cast<int>(t) + 1;
        break;
      }
    }
    if (type == 0) {  // float dust pushed pick past the last bucket
      for (std::size_t t = spec.vm_type_weights.size(); t-- > 0;) {
        if (spec.vm_type_weights[t] > 0.0) {
          type = static_cast<int>(t) + 1;
          break;
        }
      }
    }

    VmRequest r;
    r.id = i;
    r.vm_type = type;
    r.start_slot = start;
    r.end_slot = static_cast<int>(
        std::min(static_cast<long long>(cfg.horizon_slots), start + duration));
    r.demand = vm_type_entry(type).compute_units / host.compute_units;
    validate_request(r, cfg);
    requests.push_back(r);
  }
  return requests;
}

}  // namespace prepart
