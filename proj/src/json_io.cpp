#include "prepart/json_io.hpp"

namespace prepart {

nlohmann::ordered_json schedule_to_json(const Schedule& s) {
  nlohmann::ordered_json j;
  j["assignments"] = nlohmann::ordered_json::array();
  for (const Assignment& a : s.assignments) {
    nlohmann::ordered_json row;
    row["segment_id"] = a.segment.id;
    row["parent_id"] = a.segment.parent_id;
    row["pm_id"] = a.pm_id;
    row["start_slot"] = a.segment.start_slot;
    row["end_slot"] = a.segment.end_slot;
    row["demand"] = a.segment.demand;
    j["assignments"].push_back(std::move(row));
  }
  j["partition_count"] = s.partition_count;
  j["rejected"] = nlohmann::ordered_json::array();
  for (const VmRequest& r : s.rejected) j["rejected"].push_back(r.id);
  return j;
}

nlohmann::ordered_json requests_to_json(const std::vector<VmRequest>& requests) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const VmRequest& r : requests) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["start_slot"] = r.start_slot;
    row["end_slot"] = r.end_slot;
    row["demand"] = r.demand;
    row["vm_type"] = r.vm_type;
    j.push_back(std::move(row));
  }
  return j;
}

std::vector<VmRequest> requests_from_json(const nlohmann::json& j) {
  if (!j.is_array())
    throw std::invalid_argument("request list must be a JSON array");
  std::vector<VmRequest> requests;
  requests.reserve(j.size());
  for (const auto& row : j) {
    VmRequest r;
    r.id = row.at("id").get<std::int64_t>();
    r.start_slot = row.at("start_slot").get<int>();
    r.end_slot = row.at("end_slot").get<int>();
    r.demand = row.at("demand").get<double>();
    r.vm_type = row.value("vm_type", 0);
    requests.push_back(r);
  }
  return requests;
}

}  // namespace prepart
