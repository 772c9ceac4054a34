#include "logibench/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace logibench {

const char* to_string(Domain d) {
  switch (d) {
    case Domain::A: return "A";
    case Domain::B: return "B";
    case Domain::C: return "C";
    case Domain::M: return "M";
  }
  return "?";
}

std::optional<Domain> parse_domain(std::string_view text) {
  if (text == "A" || text == "a") return Domain::A;
  if (text == "B" || text == "b") return Domain::B;
  if (text == "C" || text == "c") return Domain::C;
  if (text == "M" || text == "m") return Domain::M;
  return std::nullopt;
}

std::string DomainVariant::label() const {
  std::string out = to_string(base);
  if (m_restricted && base != Domain::M) out += "^M";
  if (assigned) out += "_a";
  return out;
}

const char* action_name(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Wait: return "wait";
    case Action::Kind::Move: return "move";
    case Action::Kind::Pickup: return "pickup";
    case Action::Kind::Putdown: return "putdown";
    case Action::Kind::Deliver: return "deliver";
  }
  return "?";
}

bool is_cardinal(const Position& d) { return std::abs(d.x) + std::abs(d.y) == 1; }

std::string Action::str() const {
  switch (kind) {
    case Kind::Wait: return "wait";
    case Kind::Move: return "move" + to_string(delta);
    case Kind::Pickup: return "pickup";
    case Kind::Putdown: return "putdown";
    case Kind::Deliver:
      return "deliver(" + std::to_string(order) + "," + std::to_string(product) + "," + std::to_string(units) + ")";
  }
  return "?";
}

const Action& Plan::at(RobotId robot, int step) const {
  static const Action kWait{};
  auto it = actions.find(robot);
  if (it == actions.end() || step < 1 || step > static_cast<int>(it->second.size())) return kWait;
  return it->second[static_cast<std::size_t>(step - 1)];
}

JointAction Plan::joint(int step) const {
  JointAction out;
  for (const auto& [robot, timeline] : actions) {
    if (step >= 1 && step <= static_cast<int>(timeline.size()) && !timeline[step - 1].is_wait()) {
      out[robot] = timeline[static_cast<std::size_t>(step - 1)];
    }
  }
  return out;
}

void Plan::set(RobotId robot, int step, const Action& a) {
  if (step < 1) throw std::invalid_argument("plan steps start at 1");
  horizon = std::max(horizon, step);
  auto& timeline = actions[robot];
  if (static_cast<int>(timeline.size()) < step) timeline.resize(static_cast<std::size_t>(step));
  timeline[static_cast<std::size_t>(step - 1)] = a;
  pad_to(horizon);
}

void Plan::pad_to(int h) {
  horizon = std::max(horizon, h);
  for (auto& [robot, timeline] : actions) timeline.resize(static_cast<std::size_t>(horizon));
}

std::size_t Plan::action_count() const {
  std::size_t n = 0;
  for (const auto& [robot, timeline] : actions) {
    n += static_cast<std::size_t>(std::count_if(timeline.begin(), timeline.end(), [](const Action& a) { return !a.is_wait(); }));
  }
  return n;
}

std::optional<RobotId> State::carrier_of(ShelfId shelf) const {
  for (const auto& [robot, carried] : carries) {
    if (carried == shelf) return robot;
  }
  return std::nullopt;
}

bool State::shelf_grounded_at(const Position& p, ShelfId* shelf) const {
  for (const auto& [id, at] : shelf_pos) {
    if (at == p && !carrier_of(id)) {
      if (shelf != nullptr) *shelf = id;
      return true;
    }
  }
  return false;
}

State initial_state(const Instance& inst) {
  State s;
  for (const auto& [id, robot] : inst.robots) {
    s.robot_pos[id] = robot.at;
    s.carries[id] = robot.carries;
  }
  s.shelf_pos = inst.shelves;
  s.stock = inst.stock;
  for (const auto& [id, order] : inst.orders) {
    for (const auto& [product, units] : order.lines) s.open_lines[{id, product}] = units;
  }
  return s;
}

namespace {

Diagnostic action_error(const char* constraint, std::vector<Term> params) {
  return Diagnostic{"action", constraint, Term::tuple(std::move(params))};
}

Term pos_term(const Position& p) { return pair_term(p.x, p.y); }

int lookup(const std::map<std::pair<int, int>, int>& m, int a, int b) {
  auto it = m.find({a, b});
  return it == m.end() ? 0 : it->second;
}

// Applies a delivery to `next` when its preconditions hold; otherwise records
// the violation and returns false.
bool try_deliver(RobotId robot, const Action& a, State& next, const Instance& inst, const DomainVariant& variant,
                 int t, std::vector<Diagnostic>& out) {
  if (!variant.delivers()) {
    out.push_back(action_error("deliverInDomainM", {robot, t}));
    return false;
  }
  const auto carried = next.carries.at(robot);
  if (!carried) {
    out.push_back(action_error("deliverNotCarrying", {robot, t}));
    return false;
  }
  auto order_it = inst.orders.find(a.order);
  if (order_it == inst.orders.end() || inst.stations.at(order_it->second.station) != next.robot_pos.at(robot)) {
    out.push_back(action_error("deliverNotAtStation", {robot, a.order, t}));
    return false;
  }
  const int open = lookup(next.open_lines, a.order, a.product);
  if (open <= 0) {
    out.push_back(action_error("deliverClosedLine", {robot, a.order, a.product, t}));
    return false;
  }
  const int available = lookup(next.stock, a.product, *carried);
  if (variant.base == Domain::A) {
    if (a.units <= 0) {
      out.push_back(action_error("deliverZeroUnits", {robot, a.order, a.product, t}));
      return false;
    }
    bool ok = true;
    if (a.units > available) {
      out.push_back(action_error("deliverExceedsStock", {robot, *carried, a.product, a.units, t}));
      ok = false;
    }
    if (a.units > open) {
      out.push_back(action_error("deliverExceedsRequest", {robot, a.order, a.product, a.units, t}));
      ok = false;
    }
    if (!ok) return false;
    next.stock[{a.product, *carried}] -= a.units;
    if (next.stock[{a.product, *carried}] == 0) next.stock.erase({a.product, *carried});
    next.open_lines[{a.order, a.product}] -= a.units;
    return true;
  }
  if (available < 1) {
    out.push_back(action_error("deliverExceedsStock", {robot, *carried, a.product, 1, t}));
    return false;
  }
  if (variant.base == Domain::B) {
    next.open_lines[{a.order, a.product}] = 0;
    return true;
  }
  // C: every pending line at this station whose product is on the shelf.
  const StationId station = order_it->second.station;
  for (auto& [line, remaining] : next.open_lines) {
    if (remaining > 0 && inst.orders.at(line.first).station == station &&
        lookup(next.stock, line.second, *carried) >= 1) {
      remaining = 0;
    }
  }
  return true;
}

}  // namespace

StepResult step(const State& state, const JointAction& joint, const Instance& inst, const DomainVariant& variant) {
  const int t = state.step + 1;
  StepResult result{state, {}};
  State& next = result.state;
  auto& out = result.violations;
  next.step = t;

  std::map<RobotId, Action> effective;
  for (const auto& [robot, action] : joint) {
    if (!state.robot_pos.count(robot)) throw std::invalid_argument("joint action names unknown robot " + std::to_string(robot));
    if (action.kind == Action::Kind::Move && !is_cardinal(action.delta)) {
      throw std::invalid_argument("move delta is not a cardinal unit vector");
    }
    if (!action.is_wait()) effective[robot] = action;
  }

  // Single-robot preconditions, evaluated against the pre-state; deliveries
  // are serialized in robot-id order against the running stock.
  for (auto it = effective.begin(); it != effective.end();) {
    const RobotId robot = it->first;
    const Action& a = it->second;
    const Position here = state.robot_pos.at(robot);
    const auto carried = state.carries.at(robot);
    bool ok = true;
    switch (a.kind) {
      case Action::Kind::Move: {
        const Position target = here + a.delta;
        ShelfId blocking = 0;
        if (!inst.is_node(target)) {
          out.push_back(action_error("moveOffGrid", {robot, pos_term(target), t}));
          ok = false;
        } else if (carried && state.shelf_grounded_at(target, &blocking)) {
          out.push_back(action_error("shelfConflict", {robot, *carried, blocking, t}));
          ok = false;
        }
        break;
      }
      case Action::Kind::Pickup:
        if (!variant.delivers()) {
          out.push_back(action_error("pickupInDomainM", {robot, t}));
          ok = false;
        } else if (carried) {
          out.push_back(action_error("pickupWhileCarrying", {robot, *carried, t}));
          ok = false;
        } else if (!state.shelf_grounded_at(here)) {
          out.push_back(action_error("pickupNoShelf", {robot, t}));
          ok = false;
        }
        break;
      case Action::Kind::Putdown:
        if (!variant.delivers()) {
          out.push_back(action_error("putdownInDomainM", {robot, t}));
          ok = false;
        } else if (!carried) {
          out.push_back(action_error("putdownNotCarrying", {robot, t}));
          ok = false;
        } else if (inst.is_highway(here)) {
          out.push_back(action_error("putdownOnHighway", {robot, *carried, t}));
          ok = false;
        } else if (inst.is_station(here)) {
          out.push_back(action_error("putdownOnStation", {robot, *carried, t}));
          ok = false;
        }
        break;
      case Action::Kind::Deliver:
        ok = try_deliver(robot, a, next, inst, variant, t, out);
        break;
      case Action::Kind::Wait:
        break;
    }
    it = ok ? std::next(it) : effective.erase(it);
  }

  // Joint movement conflicts.
  auto target_of = [&](RobotId robot) {
    auto it = effective.find(robot);
    const Position here = state.robot_pos.at(robot);
    return it != effective.end() && it->second.kind == Action::Kind::Move ? here + it->second.delta : here;
  };
  std::set<RobotId> reverted;
  for (auto i = state.robot_pos.begin(); i != state.robot_pos.end(); ++i) {
    for (auto j = std::next(i); j != state.robot_pos.end(); ++j) {
      const Position ti = target_of(i->first);
      const Position tj = target_of(j->first);
      if (ti == tj) {
        out.push_back(action_error("vertexConflict", {i->first, j->first, pos_term(ti), t}));
        reverted.insert(i->first);
        reverted.insert(j->first);
      } else if (ti == j->second && tj == i->second) {
        out.push_back(action_error("swapConflict", {i->first, j->first, t}));
        reverted.insert(i->first);
        reverted.insert(j->first);
      }
    }
  }
  // Best-effort continuation: undo conflicting moves until the layout is
  // consistent again. Secondary conflicts created by undoing are not reported.
  auto undo_moves = [&](const std::set<RobotId>& robots) {
    bool changed = false;
    for (RobotId r : robots) {
      auto it = effective.find(r);
      if (it != effective.end() && it->second.kind == Action::Kind::Move) {
        effective.erase(it);
        changed = true;
      }
    }
    return changed;
  };
  bool changed = undo_moves(reverted);
  while (changed) {
    std::set<RobotId> clash;
    std::map<Position, RobotId> taken;
    for (const auto& [robot, here] : state.robot_pos) {
      const Position target = target_of(robot);
      auto [it, fresh] = taken.emplace(target, robot);
      if (!fresh) {
        clash.insert(robot);
        clash.insert(it->second);
      }
    }
    changed = undo_moves(clash);
  }

  for (const auto& [robot, a] : effective) {
    switch (a.kind) {
      case Action::Kind::Move: {
        const Position target = state.robot_pos.at(robot) + a.delta;
        next.robot_pos[robot] = target;
        if (auto carried = state.carries.at(robot)) next.shelf_pos[*carried] = target;
        break;
      }
      case Action::Kind::Pickup: {
        ShelfId shelf = 0;
        state.shelf_grounded_at(state.robot_pos.at(robot), &shelf);
        next.carries[robot] = shelf;
        break;
      }
      case Action::Kind::Putdown:
        next.carries[robot] = std::nullopt;
        break;
      default:
        break;
    }
  }
  return result;
}

std::vector<Action> legal_actions(const State& state, RobotId robot, const Instance& inst,
                                  const DomainVariant& variant) {
  std::vector<Action> out{Action::wait()};
  const Position here = state.robot_pos.at(robot);
  const auto carried = state.carries.at(robot);
  for (const auto& d : kDirections) {
    const Position target = here + d;
    if (!inst.is_node(target)) continue;
    if (carried && state.shelf_grounded_at(target)) continue;
    out.push_back(Action::move(d.x, d.y));
  }
  if (variant.base == Domain::M) return out;
  if (!carried && state.shelf_grounded_at(here)) out.push_back(Action::pickup());
  if (carried && !inst.is_highway(here) && !inst.is_station(here)) out.push_back(Action::putdown());
  if (!carried) return out;
  for (const auto& [line, remaining] : state.open_lines) {
    if (remaining <= 0) continue;
    if (inst.stations.at(inst.orders.at(line.first).station) != here) continue;
    const int available = lookup(state.stock, line.second, *carried);
    if (available < 1) continue;
    if (variant.base == Domain::A) {
      for (int n = 1; n <= std::min(available, remaining); ++n) out.push_back(Action::deliver(line.first, line.second, n));
    } else {
      out.push_back(Action::deliver(line.first, line.second, 0));
    }
  }
  return out;
}

std::vector<Diagnostic> goal_violations(const State& state, const Instance& inst, const DomainVariant& variant) {
  std::vector<Diagnostic> out;
  const int t = state.step;
  if (variant.base == Domain::M) {
    for (const auto& [line, requested] : state.open_lines) {
      bool processed = false;
      for (const auto& [key, units] : state.stock) {
        if (key.first != line.second || units < 1) continue;
        const Position shelf_at = state.shelf_pos.at(key.second);
        for (const auto& [robot, at] : state.robot_pos) {
          if (at == shelf_at) processed = true;
        }
      }
      if (!processed) {
        out.push_back(Diagnostic{"goal", "unfilledOrder", Term::tuple({line.first, line.second, requested, t})});
      }
    }
  } else {
    for (const auto& [line, remaining] : state.open_lines) {
      if (remaining > 0) {
        out.push_back(Diagnostic{"goal", "unfilledOrder", Term::tuple({line.first, line.second, remaining, t})});
      }
    }
  }
  for (const auto& [robot, at] : state.robot_pos) {
    if (inst.is_highway(at)) out.push_back(Diagnostic{"goal", "restOnHighway", Term::tuple({robot, t})});
  }
  for (const auto& [shelf, at] : state.shelf_pos) {
    if (!state.carrier_of(shelf) && inst.is_highway(at)) {
      out.push_back(Diagnostic{"goal", "shelfOnHighway", Term::tuple({shelf, t})});
    }
  }
  return out;
}

}  // namespace logibench
