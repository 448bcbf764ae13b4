#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace junction {

/// Worker count from JUNCTION_WORKERS, else the hardware concurrency (>= 1).
int default_worker_count();

/// Raised by parallel_for when a work item throws; carries the lowest failing index.
class WorkItemError : public std::runtime_error {
 public:
  WorkItemError(int index, const std::string& what)
      : std::runtime_error("work item " + std::to_string(index) + " failed: " + what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// Runs body(0..count-1) on `workers` threads. Items are independent and must
/// write only to their own output slot. On failure, remaining items are
/// skipped and the lowest failing index is reported.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace junction
