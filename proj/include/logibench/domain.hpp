#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logibench/instance.hpp"
#include "logibench/term.hpp"

namespace logibench {

/// Delivery semantics: A counts units, B ignores quantities, C closes every
/// matching line at once, M has no deliveries at all (robots only move).
enum class Domain { A, B, C, M };

const char* to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view text);

struct DomainVariant {
  Domain base = Domain::A;
  bool m_restricted = false;  // singleton alignment of orders, products, shelves
  bool assigned = false;      // planning under a precomputed task assignment

  DomainVariant() = default;
  DomainVariant(Domain b, bool m = false, bool a = false) : base(b), m_restricted(m || b == Domain::M), assigned(a) {}

  bool delivers() const { return base != Domain::M; }
  /// Short label such as "M", "C^M", "B^M_a".
  std::string label() const;
  bool operator==(const DomainVariant&) const = default;
};

struct Action {
  enum class Kind { Wait, Move, Pickup, Putdown, Deliver };

  Kind kind = Kind::Wait;
  Position delta;  // Move
  OrderId order = 0;
  ProductId product = 0;
  int units = 0;  // Deliver; 0 in B and C

  static Action wait() { return {}; }
  static Action move(int dx, int dy) { return {Kind::Move, {dx, dy}}; }
  static Action pickup() { return {Kind::Pickup, {}}; }
  static Action putdown() { return {Kind::Putdown, {}}; }
  static Action deliver(OrderId o, ProductId p, int n) { return {Kind::Deliver, {}, o, p, n}; }

  bool is_wait() const { return kind == Kind::Wait; }
  std::string str() const;
  auto operator<=>(const Action&) const = default;
};

/// Fact-level action name: move, pickup, putdown, deliver (wait for no-ops).
const char* action_name(const Action& a);

/// The four cardinal unit vectors accepted by move.
inline constexpr Position kDirections[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

bool is_cardinal(const Position& d);

/// Robots absent from the map wait.
using JointAction = std::map<RobotId, Action>;

/// Per-robot action sequences of equal length `horizon`; step t is index t-1.
struct Plan {
  int horizon = 0;
  std::map<RobotId, std::vector<Action>> actions;

  const Action& at(RobotId robot, int step) const;
  JointAction joint(int step) const;
  void set(RobotId robot, int step, const Action& a);
  /// Extends every timeline with waits up to `h`.
  void pad_to(int h);
  std::size_t action_count() const;
  bool operator==(const Plan&) const = default;
};

/// One violated constraint: err(group, constraint, params).
struct Diagnostic {
  std::string group;
  std::string constraint;
  Term params;

  auto operator<=>(const Diagnostic&) const = default;
};

struct State {
  int step = 0;
  std::map<RobotId, Position> robot_pos;
  std::map<RobotId, std::optional<ShelfId>> carries;
  std::map<ShelfId, Position> shelf_pos;
  std::map<std::pair<ProductId, ShelfId>, int> stock;
  std::map<std::pair<OrderId, ProductId>, int> open_lines;

  std::optional<RobotId> carrier_of(ShelfId shelf) const;
  bool shelf_grounded_at(const Position& p, ShelfId* shelf = nullptr) const;
  bool operator==(const State&) const = default;
};

State initial_state(const Instance& inst);

struct StepResult {
  State state;
  std::vector<Diagnostic> violations;
};

/// Successor of `state` under `joint`. Every violation is reported; actions
/// that violate a constraint are replaced by waits in the returned state.
StepResult step(const State& state, const JointAction& joint, const Instance& inst, const DomainVariant& variant);

/// Actions whose single-robot preconditions hold. Conflicts between robots
/// are a joint property and are not filtered here.
std::vector<Action> legal_actions(const State& state, RobotId robot, const Instance& inst,
                                  const DomainVariant& variant);

/// Goal violations at the final state, tagged with `state.step`.
std::vector<Diagnostic> goal_violations(const State& state, const Instance& inst, const DomainVariant& variant);

inline bool goal_satisfied(const State& state, const Instance& inst, const DomainVariant& variant) {
  return goal_violations(state, inst, variant).empty();
}

}  // namespace logibench
