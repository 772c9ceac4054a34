#include "logibench/oracle.hpp"

#include <unordered_map>

namespace logibench {

namespace {

std::string key_of(const State& s) {
  std::string k;
  auto put = [&k](int v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
  for (const auto& [r, p] : s.robot_pos) put(p.x), put(p.y);
  for (const auto& [r, c] : s.carries) put(c ? *c : -1);
  for (const auto& [id, p] : s.shelf_pos) put(p.x), put(p.y);
  for (const auto& [key, n] : s.stock) put(key.first), put(key.second), put(n);
  for (const auto& [key, n] : s.open_lines) put(n);
  return k;
}

bool allowed(const Action& a, RobotId robot, const State& s, const Assignment& asg) {
  if (asg.empty()) return true;
  if (a.kind == Action::Kind::Pickup) {
    ShelfId shelf = 0;
    s.shelf_grounded_at(s.robot_pos.at(robot), &shelf);
    for (const auto& [o, t] : asg.tasks) {
      if (t.robot == robot && t.shelf == shelf) return true;
    }
    return false;
  }
  if (a.kind == Action::Kind::Deliver) {
    auto it = asg.tasks.find(a.order);
    return it != asg.tasks.end() && it->second.robot == robot && s.carries.at(robot) == it->second.shelf;
  }
  return true;
}

bool goal(const State& s, const Instance& inst, const DomainVariant& v, const Assignment& asg) {
  if (!goal_satisfied(s, inst, v)) return false;
  if (v.base == Domain::M) {
    for (const auto& [o, t] : asg.tasks) {
      if (s.robot_pos.at(t.robot) != s.shelf_pos.at(t.shelf)) return false;
    }
  }
  return true;
}

}  // namespace

SolveResult oracle_min_makespan(const Instance& inst, const DomainVariant& variant, const OracleLimits& limits,
                                const Assignment* assignment) {
  const Assignment none;
  const Assignment& asg = assignment ? *assignment : none;
  struct Visit {
    State state;
    std::size_t parent;
    JointAction joint;
  };
  std::vector<Visit> visits;
  std::unordered_map<std::string, std::size_t> seen;
  SolveResult res;

  State init = initial_state(inst);
  visits.push_back({init, 0, {}});
  seen.emplace(key_of(init), 0);
  std::optional<std::size_t> found;
  if (goal(init, inst, variant, asg)) found = 0;

  std::size_t layer_begin = 0;
  for (int depth = 0; !found && depth < limits.max_horizon; ++depth) {
    const std::size_t layer_end = visits.size();
    if (layer_begin == layer_end) break;
    for (std::size_t v = layer_begin; v < layer_end && !found; ++v) {
      ++res.stats.expanded;
      const State base = visits[v].state;
      std::vector<RobotId> robots;
      std::vector<std::vector<Action>> options;
      for (const auto& [r, p] : base.robot_pos) {
        robots.push_back(r);
        std::vector<Action> mine;
        for (const auto& a : legal_actions(base, r, inst, variant)) {
          if (allowed(a, r, base, asg)) mine.push_back(a);
        }
        options.push_back(std::move(mine));
      }
      std::vector<std::size_t> pick(robots.size(), 0);
      while (true) {
        JointAction joint;
        for (std::size_t i = 0; i < robots.size(); ++i) {
          const Action& a = options[i][pick[i]];
          if (!a.is_wait()) joint[robots[i]] = a;
        }
        StepResult next = step(base, joint, inst, variant);
        ++res.stats.generated;
        if (next.violations.empty()) {
          next.state.step = 0;
          auto [it, fresh] = seen.emplace(key_of(next.state), visits.size());
          if (fresh) {
            if (visits.size() >= limits.state_cap) {
              throw StateCapExceeded("more than " + std::to_string(limits.state_cap) + " joint states");
            }
            const bool done = goal(next.state, inst, variant, asg);
            visits.push_back({std::move(next.state), v, joint});
            if (done) {
              found = visits.size() - 1;
              break;
            }
          }
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    layer_begin = layer_end;
  }

  if (!found) {
    res.status = SolveResult::Status::Unsat;
    res.horizon = limits.max_horizon;
    return res;
  }
  std::vector<const JointAction*> steps;
  for (std::size_t v = *found; v != 0; v = visits[v].parent) steps.push_back(&visits[v].joint);
  Plan plan;
  for (const auto& [r, robot] : inst.robots) plan.actions[r];
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    for (auto& [r, timeline] : plan.actions) {
      auto a = (*it)->find(r);
      timeline.push_back(a == (*it)->end() ? Action::wait() : a->second);
    }
  }
  plan.horizon = static_cast<int>(steps.size());
  res.status = SolveResult::Status::Plan;
  res.plan = std::move(plan);
  res.horizon = res.plan.horizon;
  return res;
}

}  // namespace logibench
