#include "prepart/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "prepart/offline.hpp"
#include "prepart/online.hpp"

namespace prepart {

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {
      "rr", "lpt", "pmg", "prepartition",
      "random", "rr_on", "olrsa", "prepartition_on"};
  return names;
}

bool is_known_algorithm(std::string_view name) {
  const auto& names = known_algorithms();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool algorithm_uses_k(std::string_view name) {
  return name == "prepartition" || name == "prepartition_on";
}

bool algorithm_uses_seed(std::string_view name) { return name == "random"; }

Schedule run_algorithm(std::string_view name,
                       const std::vector<VmRequest>& requests,
                       const SlotConfig& cfg, int machine_count, int k,
                       std::uint64_t seed) {
  if (name == "rr") return round_robin_offline(requests, cfg, machine_count);
  if (name == "lpt") return lpt(requests, cfg, machine_count);
  if (name == "pmg") return pmg(requests, cfg, machine_count);
  if (name == "prepartition") {
    PrepartitionConfig pc;
    pc.machine_count = machine_count;
    pc.k = k;
    return prepartition_offline(requests, cfg, pc);
  }
  if (name == "random") return random_online(requests, cfg, machine_count, seed);
  if (name == "rr_on") return round_robin_online(requests, cfg, machine_count);
  if (name == "olrsa") return olrsa(requests, cfg, machine_count);
  if (name == "prepartition_on")
    return prepartition_online(requests, cfg, machine_count, k);
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(text.substr(pos));
      break;
    }
    parts.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double total_cm(const std::vector<VmRequest>& requests) {
  double total = 0.0;
  for (const VmRequest& r : requests) total += capacity_makespan(r);
  return total;
}

}  // namespace

SyntheticSpec parse_synthetic_arg(std::string_view text) {
  SyntheticSpec spec;
  for (const std::string& piece : split(text, ',')) {
    if (trim(piece).empty()) continue;
    const auto eq = piece.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("synthetic spec entries look like key=value, got: " +
                                  piece);
    const std::string key = trim(piece.substr(0, eq));
    const std::string value = trim(piece.substr(eq + 1));
    if (key == "n") spec.n_requests = std::stoi(value);
    else if (key == "mu") spec.duration_mean_slots = std::stod(value);
    else if (key == "sigma") spec.duration_std_slots = std::stod(value);
    else if (key == "window") spec.start_window_slots = std::stoi(value);
    else if (key == "pm_type") spec.pm_type = std::stoi(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else if (key == "gate") spec.check_memory_storage = std::stoi(value) != 0;
    else if (key == "weights") {
      const std::vector<std::string> ws = split(value, ':');
      if (ws.size() != spec.vm_type_weights.size())
        throw std::invalid_argument("weights needs 8 colon-separated values");
      for (std::size_t i = 0; i < ws.size(); ++i)
        spec.vm_type_weights[i] = std::stod(ws[i]);
    } else {
      throw std::invalid_argument("unknown synthetic key: " + key);
    }
  }
  return spec;
}

void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value) {
  const std::string v = trim(value);
  if (key == "synthetic") cfg.synthetic = parse_synthetic_arg(v);
  else if (key == "trace") cfg.trace_path = v;
  else if (key == "algos") {
    cfg.algorithms.clear();
    for (const std::string& a : split(v, ','))
      if (!trim(a).empty()) cfg.algorithms.push_back(trim(a));
  } else if (key == "m") cfg.machine_count = std::stoi(v);
  else if (key == "k") {
    cfg.k_values.clear();
    for (const std::string& piece : split(v, ','))
      if (!trim(piece).empty()) cfg.k_values.push_back(std::stoi(trim(piece)));
  } else if (key == "repeats") cfg.repeats = std::stoi(v);
  else if (key == "seed") cfg.seed = std::stoull(v);
  else if (key == "slot_minutes") cfg.slot_length_minutes = std::stoi(v);
  else if (key == "cluster_procs") cfg.cluster_procs = std::stoll(v);
  else if (key == "reject_threshold") cfg.reject_rate_limit = std::stod(v);
  else if (key == "out") cfg.out_path = v;
  else if (key == "format") cfg.format = v;
  else throw std::invalid_argument("unknown config key: " + std::string(key));
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               ": expected key = value");
    try {
      apply_config_entry(cfg, trim(text.substr(0, eq)), text.substr(eq + 1));
    } catch (const std::exception& e) {
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  return cfg;
}

WorkloadBundle build_workload(const ExperimentConfig& cfg,
                              std::uint64_t derived_seed) {
  if (cfg.synthetic && !cfg.trace_path.empty())
    throw std::invalid_argument("pick one workload source: synthetic or trace");
  WorkloadBundle wl;
  wl.slot_cfg.slot_length_minutes = cfg.slot_length_minutes;

  if (cfg.synthetic) {
    SyntheticSpec spec = *cfg.synthetic;
    spec.seed = derived_seed;
    wl.slot_cfg.horizon_slots = synthetic_horizon_hint(spec);
    wl.requests = generate_synthetic(spec, wl.slot_cfg);
    return wl;
  }
  if (cfg.trace_path.empty())
    throw std::invalid_argument("no workload source configured");

  const SwfParseResult parsed = parse_swf_file(cfg.trace_path);
  long long procs = cfg.cluster_procs;
  if (procs <= 0) procs = std::max(1LL, max_processors(parsed.records));
  const TraceConversion conv =
      trace_to_requests(parsed.records, wl.slot_cfg, procs);
  wl.requests = conv.requests;
  int horizon = 1;
  for (const VmRequest& r : wl.requests) horizon = std::max(horizon, r.end_slot);
  wl.slot_cfg.horizon_slots = horizon;
  for (const VmRequest& r : wl.requests) validate_request(r, wl.slot_cfg);
  return wl;
}

ResultRow make_result_row(std::string algo, int n_vms, int m_pms, int k,
                          std::uint64_t seed, const MetricsReport& metrics) {
  ResultRow row;
  row.algo = std::move(algo);
  row.n_vms = n_vms;
  row.m_pms = m_pms;
  row.k = k;
  row.seed = seed;
  row.avg_util = metrics.avg_utilization;
  row.imbalance = metrics.imbalance_degree;
  row.fleet_makespan = metrics.makespan_slots;
  row.max_pm_span = metrics.max_pm_busy_span;
  row.capacity_makespan = metrics.capacity_makespan;
  row.partitions = static_cast<double>(metrics.partition_count);
  row.migrations = static_cast<double>(metrics.migration_count);
  row.wall_ms = metrics.wall_clock_ms;
  row.rejected = static_cast<double>(metrics.rejected_count);
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  for (const std::string& algo : cfg.algorithms)
    if (!is_known_algorithm(algo))
      throw std::invalid_argument("unknown algorithm: " + algo);
  for (int k : cfg.k_values)
    if (k < 1) throw std::invalid_argument("k must be >= 1");

  // One workload per repeat, shared across algorithms.
  std::vector<WorkloadBundle> workloads;
  workloads.reserve(static_cast<std::size_t>(cfg.repeats));
  for (int rep = 0; rep < cfg.repeats; ++rep)
    workloads.push_back(
        build_workload(cfg, cfg.seed + static_cast<std::uint64_t>(rep)));

  ExperimentResult result;
  for (const std::string& algo : cfg.algorithms) {
    const std::vector<int> ks =
        algorithm_uses_k(algo) ? cfg.k_values : std::vector<int>{0};
    for (int k : ks) {
      std::vector<ResultRow> cell;
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        const std::uint64_t derived =
            cfg.seed + static_cast<std::uint64_t>(rep);
        const WorkloadBundle& wl = workloads[static_cast<std::size_t>(rep)];

        const auto t0 = std::chrono::steady_clock::now();
        const Schedule sched = run_algorithm(algo, wl.requests, wl.slot_cfg,
                                             cfg.machine_count,
                                             k > 0 ? k : 1, derived);
        const auto t1 = std::chrono::steady_clock::now();

        MetricsReport metrics = fleet_metrics(sched);
        metrics.wall_clock_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        ResultRow row =
            make_result_row(algo, static_cast<int>(wl.requests.size()),
                            cfg.machine_count, k, derived, metrics);
        const double total = total_cm(wl.requests);
        row.reject_rate = total > 0.0 ? total_cm(sched.rejected) / total : 0.0;
        result.worst_reject_rate =
            std::max(result.worst_reject_rate, row.reject_rate);
        cell.push_back(row);
        result.rows.push_back(std::move(row));
      }

      ResultRow agg;
      agg.algo = algo;
      agg.n_vms = cell.front().n_vms;
      agg.m_pms = cfg.machine_count;
      agg.k = k;
      agg.aggregate = true;
      agg.seed = cfg.seed;
      const double n = static_cast<double>(cell.size());
      for (const ResultRow& r : cell) {
        agg.avg_util += r.avg_util;
        agg.imbalance += r.imbalance;
        agg.fleet_makespan += r.fleet_makespan;
        agg.max_pm_span += r.max_pm_span;
        agg.capacity_makespan += r.capacity_makespan;
        agg.partitions += r.partitions;
        agg.migrations += r.migrations;
        agg.wall_ms += r.wall_ms;
        agg.rejected += r.rejected;
        agg.reject_rate += r.reject_rate;
      }
      agg.avg_util /= n;
      agg.imbalance /= n;
      agg.fleet_makespan /= n;
      agg.max_pm_span /= n;
      agg.capacity_makespan /= n;
      agg.partitions /= n;
      agg.migrations /= n;
      agg.wall_ms /= n;
      agg.rejected /= n;
      agg.reject_rate /= n;
      result.rows.push_back(std::move(agg));
    }
  }
  return result;
}

std::string csv_header() {
  return "algo,n_vms,m_pms,k,seed,avg_util,imbalance,fleet_makespan,"
         "max_pm_span,capacity_makespan,partitions,migrations,wall_ms,"
         "rejected";
}

std::string to_csv_row(const ResultRow& row) {
  std::ostringstream out;
  out << row.algo << ',' << row.n_vms << ',' << row.m_pms << ',' << row.k
      << ',';
  if (row.aggregate)
    out << "mean";
  else
    out << row.seed;
  out << ',' << fmt_double(row.avg_util) << ',' << fmt_double(row.imbalance)
      << ',' << fmt_double(row.fleet_makespan) << ','
      << fmt_double(row.max_pm_span) << ','
      << fmt_double(row.capacity_makespan) << ','
      << fmt_double(row.partitions) << ',' << fmt_double(row.migrations)
      << ',' << fmt_double(row.wall_ms) << ',' << fmt_double(row.rejected);
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const ResultRow& row : rows) out << to_csv_row(row) << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const ResultRow& row : rows) {
    nlohmann::ordered_json j;
    j["algo"] = row.algo;
    j["n_vms"] = row.n_vms;
    j["m_pms"] = row.m_pms;
    j["k"] = row.k;
    j["seed"] = row.seed;
    j["aggregate"] = row.aggregate;
    j["avg_util"] = row.avg_util;
    j["imbalance"] = row.imbalance;
    j["fleet_makespan"] = row.fleet_makespan;
    j["max_pm_span"] = row.max_pm_span;
    j["capacity_makespan"] = row.capacity_makespan;
    j["partitions"] = row.partitions;
    j["migrations"] = row.migrations;
    j["wall_ms"] = row.wall_ms;
    j["rejected"] = row.rejected;
    j["reject_rate"] = row.reject_rate;
    out << j.dump() << '\n';
  }
}

}  // namespace prepart
