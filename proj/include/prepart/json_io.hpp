#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "prepart/domain.hpp"

namespace prepart {

// {"assignments": [{segment_id, parent_id, pm_id, start_slot, end_slot,
// demand}...], "partition_count": n, "rejected": [ids]}
nlohmann::ordered_json schedule_to_json(const Schedule& s);

// Canonical request list: [{id, start_slot, end_slot, demand, vm_type}...]
nlohmann::ordered_json requests_to_json(const std::vector<VmRequest>& requests);
std::vector<VmRequest> requests_from_json(const nlohmann::json& j);

}  // namespace prepart
