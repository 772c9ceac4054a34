#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "logibench/assignment.hpp"
#include "logibench/domain.hpp"
#include "logibench/instance.hpp"

namespace logibench {

/// How robot and shelf positions are stored in a search state: one node
/// index per object, or separate x and y coordinates.
enum class PositionEncoding { Paired, Split };

const char* to_string(PositionEncoding e);
std::optional<PositionEncoding> parse_position_encoding(std::string_view text);

struct SolveOptions {
  PositionEncoding positions = PositionEncoding::Paired;
  std::size_t node_cap = 5'000'000;  // stored states per horizon
  std::optional<std::chrono::milliseconds> budget;
  std::stop_token stop;
};

struct SolveStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  int lower_bound = 0;
  std::vector<int> horizons_tried;
};

struct SolveResult {
  enum class Status { Plan, Unsat, Unknown };

  Status status = Status::Unknown;
  Plan plan;          // Status::Plan
  int horizon = 0;    // plan length, or the horizon proven unsat
  std::string reason; // Status::Unknown
  SolveStats stats;

  bool solved() const { return status == Status::Plan; }
  int makespan() const { return plan.horizon; }
};

const char* to_string(SolveResult::Status s);

/// Admissible lower bound on the makespan of `inst`; -1 when the goal is
/// unreachable by relaxation.
int lower_bound(const Instance& inst, const DomainVariant& variant, const Assignment* assignment = nullptr);

/// A plan of exactly `horizon` steps or Unsat(horizon).
SolveResult solve_bounded(const Instance& inst, int horizon, const DomainVariant& variant,
                          const Assignment* assignment = nullptr, const SolveOptions& opt = {});

/// Number of joint states a complete search for a plan of `horizon` steps
/// has to visit: every state reachable through states whose lower bound
/// still fits the horizon. Empty when a limit stops the enumeration.
std::optional<std::uint64_t> count_bounded_states(const Instance& inst, int horizon, const DomainVariant& variant,
                                                  const Assignment* assignment = nullptr,
                                                  const SolveOptions& opt = {});

/// Shortest plan with at most `max_horizon` steps.
SolveResult solve_min_makespan(const Instance& inst, const DomainVariant& variant, int max_horizon,
                               const Assignment* assignment = nullptr, const SolveOptions& opt = {});

}  // namespace logibench
