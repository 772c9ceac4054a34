#include "logibench/instance.hpp"

#include <map>

namespace logibench {

std::string to_string(const Position& p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

bool Instance::is_station(const Position& p) const {
  for (const auto& [id, at] : stations) {
    if (at == p) return true;
  }
  return false;
}

int Instance::total_units() const {
  int total = 0;
  for (const auto& [key, units] : stock) total += units;
  return total;
}

std::set<ProductId> Instance::products() const {
  std::set<ProductId> out;
  for (const auto& [key, units] : stock) out.insert(key.first);
  return out;
}

InstanceError::InstanceError(Kind kind, std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

const char* to_string(InstanceError::Kind kind) {
  switch (kind) {
    case InstanceError::Kind::MissingNode: return "MissingNode";
    case InstanceError::Kind::DanglingReference: return "DanglingReference";
    case InstanceError::Kind::DuplicatePlacement: return "DuplicatePlacement";
    case InstanceError::Kind::QuantityNonPositive: return "QuantityNonPositive";
    case InstanceError::Kind::InadmissibleAttribute: return "InadmissibleAttribute";
    case InstanceError::Kind::StationOnHighway: return "StationOnHighway";
    case InstanceError::Kind::Occupied: return "Occupied";
    case InstanceError::Kind::NotInitFact: return "NotInitFact";
  }
  return "?";
}

void validate(const Instance& inst) {
  using K = InstanceError::Kind;
  auto need_node = [&](const Position& p, const std::string& what) {
    if (!inst.is_node(p)) throw InstanceError(K::MissingNode, to_string(p) + " referenced by " + what);
  };
  for (const auto& h : inst.highways) need_node(h, "highway");
  std::set<Position> seen;
  for (const auto& [id, at] : inst.stations) {
    need_node(at, "pickingStation " + std::to_string(id));
    if (inst.is_highway(at)) {
      throw InstanceError(K::StationOnHighway, "pickingStation " + std::to_string(id) + " at " + to_string(at));
    }
    if (!seen.insert(at).second) {
      throw InstanceError(K::Occupied, "two picking stations at " + to_string(at));
    }
  }
  seen.clear();
  for (const auto& [id, at] : inst.shelves) {
    need_node(at, "shelf " + std::to_string(id));
    if (!seen.insert(at).second) throw InstanceError(K::Occupied, "two shelves at " + to_string(at));
  }
  seen.clear();
  std::set<ShelfId> carried;
  for (const auto& [id, robot] : inst.robots) {
    need_node(robot.at, "robot " + std::to_string(id));
    if (!seen.insert(robot.at).second) throw InstanceError(K::Occupied, "two robots at " + to_string(robot.at));
    if (robot.carries) {
      auto it = inst.shelves.find(*robot.carries);
      if (it == inst.shelves.end()) {
        throw InstanceError(K::DanglingReference, "robot " + std::to_string(id) + " carries unknown shelf " +
                                                      std::to_string(*robot.carries));
      }
      if (it->second != robot.at) {
        throw InstanceError(K::DanglingReference, "robot " + std::to_string(id) + " carries shelf " +
                                                      std::to_string(*robot.carries) + " placed elsewhere");
      }
      if (!carried.insert(*robot.carries).second) {
        throw InstanceError(K::DuplicatePlacement, "shelf " + std::to_string(*robot.carries) + " carried twice");
      }
    }
  }
  std::map<ProductId, int> available;
  for (const auto& [key, units] : inst.stock) {
    if (!inst.shelves.count(key.second)) {
      throw InstanceError(K::DanglingReference,
                          "product " + std::to_string(key.first) + " on unknown shelf " + std::to_string(key.second));
    }
    if (units <= 0) {
      throw InstanceError(K::QuantityNonPositive,
                          "product " + std::to_string(key.first) + " on shelf " + std::to_string(key.second));
    }
    available[key.first] += units;
  }
  for (const auto& [id, order] : inst.orders) {
    if (!inst.stations.count(order.station)) {
      throw InstanceError(K::DanglingReference,
                          "order " + std::to_string(id) + " uses unknown pickingStation " + std::to_string(order.station));
    }
    for (const auto& [product, units] : order.lines) {
      if (units <= 0) {
        throw InstanceError(K::QuantityNonPositive, "order " + std::to_string(id) + " product " + std::to_string(product));
      }
      if (!available.count(product)) {
        throw InstanceError(K::DanglingReference,
                            "order " + std::to_string(id) + " requests unstocked product " + std::to_string(product));
      }
    }
  }
}

std::vector<std::string> alignment_problems(const Instance& inst) {
  std::vector<std::string> problems;
  if (inst.orders.size() != inst.robots.size()) {
    problems.push_back(std::to_string(inst.orders.size()) + " orders for " + std::to_string(inst.robots.size()) +
                       " robots");
  }
  std::set<ProductId> ordered;
  for (const auto& [id, order] : inst.orders) {
    if (order.lines.size() != 1 || order.lines.begin()->second != 1) {
      problems.push_back("order " + std::to_string(id) + " is not a single one-unit line");
    }
    for (const auto& [product, units] : order.lines) {
      if (!ordered.insert(product).second) {
        problems.push_back("product " + std::to_string(product) + " ordered twice");
      }
    }
  }
  std::map<ProductId, int> shelves_per_product;
  std::map<ShelfId, int> products_per_shelf;
  for (const auto& [key, units] : inst.stock) {
    ++shelves_per_product[key.first];
    ++products_per_shelf[key.second];
    if (units != 1) {
      problems.push_back("product " + std::to_string(key.first) + " has " + std::to_string(units) + " units on shelf " +
                         std::to_string(key.second));
    }
  }
  for (const auto& [product, n] : shelves_per_product) {
    if (n != 1) problems.push_back("product " + std::to_string(product) + " on " + std::to_string(n) + " shelves");
  }
  for (const auto& [shelf, n] : products_per_shelf) {
    if (n > 1) problems.push_back("shelf " + std::to_string(shelf) + " holds " + std::to_string(n) + " products");
  }
  return problems;
}

}  // namespace logibench
