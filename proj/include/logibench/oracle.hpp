#pragma once

#include <cstddef>
#include <stdexcept>

#include "logibench/assignment.hpp"
#include "logibench/planner.hpp"

namespace logibench {

struct OracleLimits {
  std::size_t state_cap = 1'000'000;
  int max_horizon = 64;
};

class StateCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Breadth-first search over exact joint states, stepping with the reference
/// transition function. Optimal by construction; meant for small instances.
SolveResult oracle_min_makespan(const Instance& inst, const DomainVariant& variant, const OracleLimits& limits = {},
                                const Assignment* assignment = nullptr);

}  // namespace logibench
