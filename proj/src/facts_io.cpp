#include "logibench/facts_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace logibench {

PlanError::PlanError(Kind kind, std::string detail) : std::runtime_error(std::move(detail)), kind_(kind) {}

const AttributeRegistry& AttributeRegistry::standard() {
  static const AttributeRegistry registry{{
      {"node", {{"at", 2}}},
      {"highway", {{"at", 2}}},
      {"robot", {{"at", 2}, {"carries", 1}}},
      {"shelf", {{"at", 2}}},
      {"pickingStation", {{"at", 2}}},
      {"product", {{"on", 2}}},
      {"order", {{"line", 2}, {"pickingStation", 1}}},
  }};
  return registry;
}

namespace {

using K = InstanceError::Kind;

std::string describe(const InitFact& f) { return format_fact(f); }

std::pair<int, int> int_pair(const InitFact& f) {
  const Term& v = f.value;
  if (!v.is_tuple() || v.size() != 2 || !v.items()[0].is_int() || !v.items()[1].is_int()) {
    throw InstanceError(K::InadmissibleAttribute, "expected an integer pair in " + describe(f));
  }
  return {static_cast<int>(v.items()[0].as_int()), static_cast<int>(v.items()[1].as_int())};
}

int single_int(const InitFact& f) {
  if (!f.value.is_int()) throw InstanceError(K::InadmissibleAttribute, "expected an integer in " + describe(f));
  return static_cast<int>(f.value.as_int());
}

std::vector<Position> row_major(const std::set<Position>& positions) {
  std::vector<Position> out(positions.begin(), positions.end());
  std::sort(out.begin(), out.end(), [](const Position& a, const Position& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  return out;
}

Term at_term(const Position& p) { return pair_term(p.x, p.y); }

int as_int(const Term& t, const std::string& context) {
  if (!t.is_int()) throw PlanError(PlanError::Kind::BadAction, "expected integer in " + context);
  return static_cast<int>(t.as_int());
}

}  // namespace

Instance build_instance(const FactSet& facts, std::vector<std::string>* skipped) {
  if (!facts.occurs.empty() || !facts.errs.empty()) {
    throw InstanceError(K::NotInitFact, "instance input contains occurs or err facts");
  }
  const auto& registry = AttributeRegistry::standard();
  Instance inst;
  std::map<RobotId, Position> robot_at;
  std::map<RobotId, ShelfId> robot_carries;
  std::map<OrderId, std::optional<StationId>> order_station;
  std::map<OrderId, std::map<ProductId, int>> order_lines;

  auto duplicate = [](const InitFact& f) {
    return InstanceError(K::DuplicatePlacement, f.object_type + " " + std::to_string(f.object_id) + " (" + describe(f) + ")");
  };

  for (const auto& f : facts.inits) {
    auto type_it = registry.types.find(f.object_type);
    if (type_it == registry.types.end()) {
      if (skipped) skipped->push_back(describe(f));
      continue;
    }
    if (!type_it->second.count(f.attribute)) {
      throw InstanceError(K::InadmissibleAttribute, f.attribute + " is not an attribute of " + f.object_type);
    }
    const int id = static_cast<int>(f.object_id);
    if (f.object_type == "node") {
      auto [x, y] = int_pair(f);
      inst.nodes.insert({x, y});
    } else if (f.object_type == "highway") {
      auto [x, y] = int_pair(f);
      inst.highways.insert({x, y});
    } else if (f.object_type == "pickingStation") {
      auto [x, y] = int_pair(f);
      if (!inst.stations.emplace(id, Position{x, y}).second) throw duplicate(f);
    } else if (f.object_type == "shelf") {
      auto [x, y] = int_pair(f);
      if (!inst.shelves.emplace(id, Position{x, y}).second) throw duplicate(f);
    } else if (f.object_type == "robot") {
      if (f.attribute == "at") {
        auto [x, y] = int_pair(f);
        if (!robot_at.emplace(id, Position{x, y}).second) throw duplicate(f);
      } else if (!robot_carries.emplace(id, single_int(f)).second) {
        throw duplicate(f);
      }
    } else if (f.object_type == "product") {
      auto [shelf, units] = int_pair(f);
      if (!inst.stock.emplace(std::make_pair(id, shelf), units).second) throw duplicate(f);
    } else if (f.object_type == "order") {
      if (f.attribute == "line") {
        auto [product, units] = int_pair(f);
        if (!order_lines[id].emplace(product, units).second) throw duplicate(f);
      } else {
        auto& station = order_station[id];
        if (station) throw duplicate(f);
        station = single_int(f);
      }
    }
  }
  if (skipped) {
    for (const auto& extra : facts.extras) skipped->push_back(extra.str());
  }

  for (const auto& [id, at] : robot_at) inst.robots[id] = RobotPlacement{at, std::nullopt};
  for (const auto& [id, shelf] : robot_carries) {
    auto it = inst.robots.find(id);
    if (it == inst.robots.end()) {
      throw InstanceError(K::DanglingReference, "robot " + std::to_string(id) + " carries a shelf but has no position");
    }
    it->second.carries = shelf;
  }
  for (const auto& [id, station] : order_station) {
    if (!order_lines.count(id)) throw InstanceError(K::DanglingReference, "order " + std::to_string(id) + " has no lines");
  }
  for (auto& [id, lines] : order_lines) {
    auto st = order_station.find(id);
    if (st == order_station.end() || !st->second) {
      throw InstanceError(K::DanglingReference, "order " + std::to_string(id) + " has no pickingStation");
    }
    inst.orders[id] = Order{*st->second, std::move(lines)};
  }
  for (const auto& p : inst.nodes) {
    inst.width = std::max(inst.width, p.x);
    inst.height = std::max(inst.height, p.y);
  }
  validate(inst);
  return inst;
}

Term to_term(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Move: return pair_term(a.delta.x, a.delta.y);
    case Action::Kind::Deliver: return Term::tuple({a.order, a.product, a.units});
    default: return Term::tuple(std::vector<Term>{});
  }
}

Action action_from(const std::string& name, const Term& args) {
  const std::string context = name + args.str();
  if (name == "move") {
    if (!args.is_tuple() || args.size() != 2) throw PlanError(PlanError::Kind::BadAction, "move needs (dx,dy): " + context);
    const Position d{as_int(args.items()[0], context), as_int(args.items()[1], context)};
    if (!is_cardinal(d)) throw PlanError(PlanError::Kind::BadAction, "move is not a cardinal unit vector: " + context);
    return Action::move(d.x, d.y);
  }
  if (name == "pickup" || name == "putdown") {
    if (!args.is_tuple() || args.size() != 0) throw PlanError(PlanError::Kind::BadAction, name + " takes (): " + context);
    return name == "pickup" ? Action::pickup() : Action::putdown();
  }
  if (name == "deliver") {
    if (!args.is_tuple() || args.size() != 3) {
      throw PlanError(PlanError::Kind::BadAction, "deliver needs (order,product,units): " + context);
    }
    const int units = as_int(args.items()[2], context);
    if (units < 0) throw PlanError(PlanError::Kind::BadAction, "negative deliver quantity: " + context);
    return Action::deliver(as_int(args.items()[0], context), as_int(args.items()[1], context), units);
  }
  throw PlanError(PlanError::Kind::BadAction, "unknown action " + name);
}

Plan build_plan(const FactSet& facts, const Instance& inst) {
  if (!facts.inits.empty() || !facts.errs.empty()) {
    throw PlanError(PlanError::Kind::NotOccursFact, "plan input contains init or err facts");
  }
  Plan plan;
  std::set<std::pair<RobotId, int>> seen;
  for (const auto& f : facts.occurs) {
    const int robot = static_cast<int>(f.object_id);
    if (f.object_type != "robot" || !inst.robots.count(robot)) {
      throw PlanError(PlanError::Kind::UnknownRobot, f.object_type + " " + std::to_string(f.object_id));
    }
    const int step = static_cast<int>(f.step);
    if (!seen.emplace(robot, step).second) {
      throw PlanError(PlanError::Kind::DuplicateAction,
                      "robot " + std::to_string(robot) + " has two actions at step " + std::to_string(step));
    }
    plan.set(robot, step, action_from(f.action, f.args));
  }
  return plan;
}

FactSet to_facts(const Instance& inst) {
  FactSet fs;
  int id = 0;
  for (const auto& p : row_major(inst.nodes)) fs.inits.push_back({"node", ++id, "at", at_term(p)});
  id = 0;
  for (const auto& p : row_major(inst.highways)) fs.inits.push_back({"highway", ++id, "at", at_term(p)});
  for (const auto& [sid, at] : inst.stations) fs.inits.push_back({"pickingStation", sid, "at", at_term(at)});
  for (const auto& [sid, at] : inst.shelves) fs.inits.push_back({"shelf", sid, "at", at_term(at)});
  for (const auto& [rid, robot] : inst.robots) {
    fs.inits.push_back({"robot", rid, "at", at_term(robot.at)});
    if (robot.carries) fs.inits.push_back({"robot", rid, "carries", Term(*robot.carries)});
  }
  for (const auto& [key, units] : inst.stock) {
    fs.inits.push_back({"product", key.first, "on", pair_term(key.second, units)});
  }
  for (const auto& [oid, order] : inst.orders) {
    for (const auto& [product, units] : order.lines) fs.inits.push_back({"order", oid, "line", pair_term(product, units)});
    fs.inits.push_back({"order", oid, "pickingStation", Term(order.station)});
  }
  fs.canonicalize();
  return fs;
}

FactSet to_facts(const Plan& plan, Domain domain) {
  FactSet fs;
  for (const auto& [robot, timeline] : plan.actions) {
    for (std::size_t i = 0; i < timeline.size(); ++i) {
      Action a = timeline[i];
      if (a.is_wait()) continue;
      if (a.kind == Action::Kind::Deliver && (domain == Domain::B || domain == Domain::C)) a.units = 0;
      fs.occurs.push_back({"robot", robot, action_name(a), to_term(a), static_cast<std::int64_t>(i + 1)});
    }
  }
  fs.canonicalize();
  return fs;
}

FactSet to_facts(const DiagnosticReport& report) {
  FactSet fs;
  for (const auto& d : report.diagnostics) fs.errs.push_back({d.group, d.constraint, d.params});
  fs.canonicalize();
  return fs;
}

std::string serialize(const Instance& inst, const std::vector<std::string>& header) {
  FactSet fs = to_facts(inst);
  fs.header_comments = header;
  return format_facts(fs);
}

std::string serialize(const Plan& plan, Domain domain) { return format_facts(to_facts(plan, domain)); }

std::string serialize(const DiagnosticReport& report) {
  FactSet fs = to_facts(report);
  const std::size_t n = report.diagnostics.size();
  fs.header_comments.push_back(std::to_string(n) + (n == 1 ? " error" : " errors"));
  return format_facts(fs);
}

Instance read_instance(std::string_view text) { return build_instance(parse_facts(text)); }

Plan read_plan(std::string_view text, const Instance& inst) { return build_plan(parse_facts(text), inst); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace logibench
