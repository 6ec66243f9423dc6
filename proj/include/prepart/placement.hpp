#pragma once

#include <queue>
#include <tuple>
#include <vector>

#include "prepart/domain.hpp"

namespace prepart {

// Picks the feasible machine with the smallest (load_cm, id) in amortized
// O(log m) via a lazy min-heap: stale entries are refreshed on pop instead
// of being updated in place. Ties always resolve to the lowest machine id,
// which keeps every scheduler built on top of this deterministic.
class LowestLoadSelector {
 public:
  explicit LowestLoadSelector(std::vector<PmState>& fleet) : fleet_(&fleet) {
    for (const PmState& pm : fleet) heap_.push({pm.load_cm, pm.id});
  }

  // Places seg on the lowest-loaded machine that can hold it and returns the
  // machine id, or -1 when no machine is feasible.
  int place(const VmRequest& seg) {
    std::vector<Entry> probed;  // feasibility failures, pushed back afterwards
    int placed_on = -1;
    while (!heap_.empty()) {
      Entry top = heap_.top();
      heap_.pop();
      PmState& pm = (*fleet_)[static_cast<std::size_t>(top.second)];
      if (pm.load_cm != top.first) {  // stale: reinsert with the fresh load
        heap_.push({pm.load_cm, pm.id});
        continue;
      }
      if (pm.try_place(seg)) {
        heap_.push({pm.load_cm, pm.id});
        placed_on = pm.id;
        break;
      }
      probed.push_back(top);
    }
    for (const Entry& e : probed) heap_.push(e);
    return placed_on;
  }

 private:
  using Entry = std::pair<double, int>;  // (load_cm, pm id)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::vector<PmState>* fleet_;
};

}  // namespace prepart
