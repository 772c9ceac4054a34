#include "logibench/assignment.hpp"

#include <algorithm>
#include <set>

#include "logibench/grid.hpp"

namespace logibench {

namespace {

class DistanceTable {
 public:
  explicit DistanceTable(const Instance& inst) : graph_(inst) {}

  long between(const Position& a, const Position& b) {
    const int from = graph_.index(a);
    const int to = graph_.index(b);
    if (from == GridGraph::kNone || to == GridGraph::kNone) return GridGraph::kUnreachable;
    auto it = cache_.find(from);
    if (it == cache_.end()) it = cache_.emplace(from, graph_.distances_from(from)).first;
    return it->second[static_cast<std::size_t>(to)];
  }

 private:
  GridGraph graph_;
  std::map<int, std::vector<int>> cache_;
};

int units_on(const Instance& inst, ProductId product, ShelfId shelf) {
  auto it = inst.stock.find({product, shelf});
  return it == inst.stock.end() ? 0 : it->second;
}

bool shelf_serves(const Instance& inst, const DomainVariant& variant, const Order& order, ShelfId shelf) {
  for (const auto& [product, units] : order.lines) {
    const int need = variant.base == Domain::A ? units : 1;
    if (units_on(inst, product, shelf) < need) return false;
  }
  return true;
}

std::vector<ShelfId> feasible_shelves(const Instance& inst, const DomainVariant& variant, const Order& order) {
  std::vector<ShelfId> out;
  for (const auto& [id, at] : inst.shelves) {
    if (shelf_serves(inst, variant, order, id)) out.push_back(id);
  }
  return out;
}

long task_cost(const Instance& inst, const DomainVariant& variant, const Assignment::Task& t, DistanceTable& dist) {
  const Position shelf_at = inst.shelves.at(t.shelf);
  long c = dist.between(inst.robots.at(t.robot).at, shelf_at);
  if (variant.delivers()) c += dist.between(shelf_at, inst.stations.at(t.station));
  return c;
}

long total_cost(const Instance& inst, const DomainVariant& variant, const Assignment& a, DistanceTable& dist) {
  long sum = 0;
  for (const auto& [order, task] : a.tasks) sum += task_cost(inst, variant, task, dist);
  return sum;
}

// Singleton alignment: distinct robots carry distinct shelves.
bool injective(const Assignment& a) {
  std::map<RobotId, ShelfId> shelf_of;
  std::set<ShelfId> used;
  for (const auto& [order, task] : a.tasks) {
    auto [it, fresh] = shelf_of.emplace(task.robot, task.shelf);
    if (!fresh && it->second != task.shelf) return false;
    if (fresh && !used.insert(task.shelf).second) return false;
  }
  return true;
}

}  // namespace

long assignment_cost(const Instance& inst, const DomainVariant& variant, const Assignment& a) {
  DistanceTable dist(inst);
  return total_cost(inst, variant, a, dist);
}

Assignment initial_assignment(const Instance& inst, const DomainVariant& variant) {
  Assignment a;
  std::set<ShelfId> used_shelves;
  std::map<RobotId, int> load;
  for (const auto& [id, robot] : inst.robots) load[id] = 0;
  for (const auto& [oid, order] : inst.orders) {
    const auto shelves = feasible_shelves(inst, variant, order);
    std::optional<ShelfId> shelf;
    for (ShelfId s : shelves) {
      if (!variant.m_restricted || !used_shelves.count(s)) {
        shelf = s;
        break;
      }
    }
    if (!shelf) throw AssignmentError("no shelf can serve order " + std::to_string(oid));
    std::optional<RobotId> robot;
    for (const auto& [rid, n] : load) {
      if (variant.m_restricted ? n == 0 : (!robot || n < load.at(*robot))) {
        robot = rid;
        if (variant.m_restricted) break;
      }
    }
    if (!robot) throw AssignmentError("no free robot for order " + std::to_string(oid));
    ++load[*robot];
    used_shelves.insert(*shelf);
    a.tasks[oid] = Assignment::Task{*robot, *shelf, order.station};
  }
  return a;
}

Assignment compute_assignment(const Instance& inst, const DomainVariant& variant, std::chrono::milliseconds budget) {
  const auto deadline = std::chrono::steady_clock::now() + budget;
  Assignment best = initial_assignment(inst, variant);
  DistanceTable dist(inst);
  long best_cost = total_cost(inst, variant, best, dist);

  std::vector<RobotId> robots;
  for (const auto& [id, r] : inst.robots) robots.push_back(id);
  std::map<OrderId, std::vector<ShelfId>> shelves;
  for (const auto& [oid, order] : inst.orders) shelves[oid] = feasible_shelves(inst, variant, order);

  // Best-improvement local search; a candidate replaces the incumbent only on
  // a strict cost decrease, and candidates are scanned in id order.
  while (std::chrono::steady_clock::now() < deadline) {
    std::optional<Assignment> improved;
    long improved_cost = best_cost;
    auto consider = [&](Assignment cand) {
      if (variant.m_restricted && !injective(cand)) return;
      const long c = total_cost(inst, variant, cand, dist);
      if (c < improved_cost) {
        improved_cost = c;
        improved = std::move(cand);
      }
    };
    for (const auto& [oid, task] : best.tasks) {
      for (RobotId r : robots) {
        if (r == task.robot) continue;
        Assignment cand = best;
        cand.tasks[oid].robot = r;
        consider(std::move(cand));
      }
      for (ShelfId s : shelves[oid]) {
        if (s == task.shelf) continue;
        Assignment cand = best;
        cand.tasks[oid].shelf = s;
        consider(std::move(cand));
      }
    }
    for (auto i = best.tasks.begin(); i != best.tasks.end(); ++i) {
      for (auto j = std::next(i); j != best.tasks.end(); ++j) {
        if (i->second.robot == j->second.robot) continue;
        Assignment cand = best;
        std::swap(cand.tasks[i->first].robot, cand.tasks[j->first].robot);
        consider(std::move(cand));
      }
    }
    if (!improved) break;
    best = std::move(*improved);
    best_cost = improved_cost;
  }
  return best;
}

ConstrainedProblem apply_assignment(const Instance& inst, const Assignment& a, bool m_restricted) {
  if (a.empty()) {
    if (!inst.orders.empty()) throw AssignmentError("empty assignment leaves every order uncovered");
    return {inst, a};
  }
  const DomainVariant lenient(Domain::B);
  for (const auto& [oid, task] : a.tasks) {
    auto order = inst.orders.find(oid);
    if (order == inst.orders.end()) throw AssignmentError("assignment names unknown order " + std::to_string(oid));
    if (!inst.robots.count(task.robot)) throw AssignmentError("assignment names unknown robot " + std::to_string(task.robot));
    if (!inst.shelves.count(task.shelf)) throw AssignmentError("assignment names unknown shelf " + std::to_string(task.shelf));
    if (task.station != order->second.station) {
      throw AssignmentError("order " + std::to_string(oid) + " is processed at station " +
                            std::to_string(order->second.station) + ", not " + std::to_string(task.station));
    }
    if (!shelf_serves(inst, lenient, order->second, task.shelf)) {
      throw AssignmentError("shelf " + std::to_string(task.shelf) + " lacks products of order " + std::to_string(oid));
    }
  }
  for (const auto& [oid, order] : inst.orders) {
    if (!a.tasks.count(oid)) throw AssignmentError("order " + std::to_string(oid) + " has no task");
  }
  if (m_restricted && !injective(a)) throw AssignmentError("robot-to-shelf map is not injective");
  return {inst, a};
}

FactSet to_facts(const Assignment& a) {
  FactSet fs;
  for (const auto& [oid, task] : a.tasks) {
    fs.extras.push_back(RawFact{"assignment",
                                {Term::function("object", {Term::symbol("robot"), Term(task.robot)}),
                                 Term::function("task", {Term(oid), Term(task.shelf)})}});
  }
  fs.canonicalize();
  return fs;
}

Assignment assignment_from_facts(const FactSet& facts, const Instance& inst) {
  Assignment a;
  for (const auto& f : facts.extras) {
    if (f.predicate != "assignment") continue;
    const bool shaped = f.args.size() == 2 && f.args[0].is_function() && f.args[0].as_function().name == "object" &&
                        f.args[0].as_function().args.size() == 2 && f.args[0].as_function().args[1].is_int() &&
                        f.args[1].is_function() && f.args[1].as_function().name == "task" &&
                        f.args[1].as_function().args.size() == 2 && f.args[1].as_function().args[0].is_int() &&
                        f.args[1].as_function().args[1].is_int();
    if (!shaped) throw AssignmentError("malformed fact " + f.str());
    const auto robot = static_cast<RobotId>(f.args[0].as_function().args[1].as_int());
    const auto order = static_cast<OrderId>(f.args[1].as_function().args[0].as_int());
    const auto shelf = static_cast<ShelfId>(f.args[1].as_function().args[1].as_int());
    auto it = inst.orders.find(order);
    if (it == inst.orders.end()) throw AssignmentError("assignment names unknown order " + std::to_string(order));
    if (!a.tasks.emplace(order, Assignment::Task{robot, shelf, it->second.station}).second) {
      throw AssignmentError("order " + std::to_string(order) + " assigned twice");
    }
  }
  return a;
}

}  // namespace logibench
