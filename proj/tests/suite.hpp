#pragma once

#include <string>
#include <vector>

#include "logibench/checker.hpp"
#include "logibench/generator.hpp"

namespace logibench::testing {

// Tiny structured instances: 5x5 grid, one 3x1 storage cluster row, 2 robots,
// 2 singleton orders. Small enough for the exhaustive oracle.
inline GenConfig tiny_config(int seed) {
  GenConfig cfg;
  cfg.x = 5, cfg.y = 5, cfg.X = 3, cfg.Y = 1, cfg.H = true;
  cfg.r = 2, cfg.o = 2, cfg.prs = 1;
  cfg.p = 1 + seed % 2;
  cfg.s = 2 + (seed / 2) % 2;
  cfg.P = cfg.s, cfg.u = cfg.s;
  cfg.seed = static_cast<std::uint64_t>(seed);
  return cfg;
}

// The small 11x6 benchmark layout with 2 robots.
inline GenConfig small_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.x = 11, cfg.y = 6, cfg.X = 4, cfg.Y = 2, cfg.H = true;
  cfg.p = 1, cfg.s = 16, cfg.P = 16, cfg.u = 16, cfg.prs = 1;
  cfg.r = 2, cfg.o = 2;
  cfg.seed = seed;
  return cfg;
}

inline const std::vector<DomainVariant>& aligned_variants() {
  static const std::vector<DomainVariant> v{DomainVariant(Domain::M), DomainVariant(Domain::C, true),
                                            DomainVariant(Domain::B, true), DomainVariant(Domain::A, true)};
  return v;
}

struct Mutation {
  Plan plan;
  std::string expected;  // constraint that must be reported
  std::string what;
};

// Single-action perturbations of a valid plan whose effect is predictable
// from the plan's own trace:
//  - a wait or move redirected off the grid        -> moveOffGrid
//  - a wait or move redirected onto a square that another robot holds after
//    the step                                      -> vertexConflict
//  - a pickup dropped before the robot delivers    -> deliverNotCarrying
//  - a deliver dropped when nothing later can close the line -> unfilledOrder
inline std::vector<Mutation> mutations_of(const Instance& inst, const Plan& plan, const DomainVariant& variant) {
  const DiagnosticReport base = check_plan(inst, plan, variant, CheckOptions{true});
  std::vector<Mutation> out;
  if (!base.valid()) return out;
  auto with = [&](RobotId r, int t, const Action& a) {
    Plan p = plan;
    p.set(r, t, a);
    return p;
  };
  for (const auto& [robot, timeline] : plan.actions) {
    for (int t = 1; t <= plan.horizon; ++t) {
      const Action& a = timeline[static_cast<std::size_t>(t - 1)];
      const State& before = base.trace[static_cast<std::size_t>(t - 1)];
      const State& after = base.trace[static_cast<std::size_t>(t)];
      const Position here = before.robot_pos.at(robot);
      const std::string where = "robot " + std::to_string(robot) + " step " + std::to_string(t);
      if (a.kind == Action::Kind::Move || a.kind == Action::Kind::Wait) {
        for (const auto& d : kDirections) {
          if (a.kind == Action::Kind::Move && d == a.delta) continue;
          if (!inst.is_node(here + d)) {
            out.push_back({with(robot, t, Action::move(d.x, d.y)), "moveOffGrid", "off grid, " + where});
            break;
          }
        }
        bool found = false;
        for (const auto& d : kDirections) {
          if (found) break;
          if (a.kind == Action::Kind::Move && d == a.delta) continue;
          const Position target = here + d;
          if (!inst.is_node(target)) continue;
          if (before.carries.at(robot) && before.shelf_grounded_at(target)) continue;
          for (const auto& [other, at] : after.robot_pos) {
            if (other != robot && at == target) {
              out.push_back({with(robot, t, Action::move(d.x, d.y)), "vertexConflict", "collide, " + where});
              found = true;
              break;
            }
          }
        }
      } else if (a.kind == Action::Kind::Pickup) {
        for (int u = t + 1; u <= plan.horizon; ++u) {
          const Action& later = timeline[static_cast<std::size_t>(u - 1)];
          if (later.kind == Action::Kind::Pickup) break;
          if (later.kind == Action::Kind::Deliver) {
            out.push_back({with(robot, t, Action::wait()), "deliverNotCarrying", "drop pickup, " + where});
            break;
          }
        }
      } else if (a.kind == Action::Kind::Deliver) {
        bool later_delivery = false;
        for (const auto& [other, other_timeline] : plan.actions)
          for (int u = t; u <= plan.horizon; ++u)
            if ((other != robot || u > t) && other_timeline[static_cast<std::size_t>(u - 1)].kind == Action::Kind::Deliver)
              later_delivery = true;
        if (variant.base != Domain::C || !later_delivery) {
          out.push_back({with(robot, t, Action::wait()), "unfilledOrder", "drop deliver, " + where});
        }
      }
    }
  }
  return out;
}

inline bool reports(const DiagnosticReport& r, const std::string& constraint) {
  for (const auto& d : r.diagnostics)
    if (d.constraint == constraint) return true;
  return false;
}

}  // namespace logibench::testing
