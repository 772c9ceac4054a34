#pragma once

#include <chrono>
#include <map>
#include <stdexcept>
#include <string>

#include "logibench/domain.hpp"
#include "logibench/facts.hpp"
#include "logibench/instance.hpp"

namespace logibench {

/// Which robot serves which order, with which shelf, at which station.
struct Assignment {
  struct Task {
    RobotId robot = 0;
    ShelfId shelf = 0;
    StationId station = 0;
    auto operator<=>(const Task&) const = default;
  };
  std::map<OrderId, Task> tasks;

  bool empty() const { return tasks.empty(); }
  bool operator==(const Assignment&) const = default;
};

class AssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objective minimized by compute_assignment: the sum over tasks of the
/// robot-to-shelf distance plus, when the variant delivers, the
/// shelf-to-station distance. Distances are shortest paths on the node graph.
long assignment_cost(const Instance& inst, const DomainVariant& variant, const Assignment& a);

/// Feasible assignment, improved by single-task moves and pairwise robot
/// swaps until no strict improvement remains or `budget` runs out. Ties keep
/// the earlier choice, so lower order ids get lower robot ids.
Assignment compute_assignment(const Instance& inst, const DomainVariant& variant,
                              std::chrono::milliseconds budget = std::chrono::milliseconds(300000));

/// The deterministic starting point of compute_assignment.
Assignment initial_assignment(const Instance& inst, const DomainVariant& variant);

/// An instance together with the assignment that restricts planning.
struct ConstrainedProblem {
  Instance instance;
  Assignment assignment;
};

/// Checks `a` against `inst`; throws AssignmentError when a task names an
/// unknown object, a shelf lacking the order's products, a station other than
/// the order's, when orders are left uncovered, or when one robot gets two
/// shelves under the singleton alignment.
ConstrainedProblem apply_assignment(const Instance& inst, const Assignment& a, bool m_restricted = false);

/// `assignment(object(robot,R),task(O,S)).` facts.
FactSet to_facts(const Assignment& a);
/// Reads assignment facts from `facts.extras`; other facts are ignored.
Assignment assignment_from_facts(const FactSet& facts, const Instance& inst);

}  // namespace logibench
