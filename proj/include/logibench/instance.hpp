#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace logibench {

/// Grid square, 1-based; x grows rightward, y grows downward.
struct Position {
  int x = 0;
  int y = 0;

  Position operator+(const Position& d) const { return {x + d.x, y + d.y}; }
  Position operator-(const Position& d) const { return {x - d.x, y - d.y}; }
  auto operator<=>(const Position&) const = default;
};

std::string to_string(const Position& p);

inline int manhattan(const Position& a, const Position& b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

using RobotId = int;
using ShelfId = int;
using StationId = int;
using ProductId = int;
using OrderId = int;

struct RobotPlacement {
  Position at;
  std::optional<ShelfId> carries;
  auto operator<=>(const RobotPlacement&) const = default;
};

struct Order {
  StationId station = 0;
  std::map<ProductId, int> lines;  // product -> requested units
  auto operator<=>(const Order&) const = default;
};

/// Immutable warehouse description. Build through build_instance() or the
/// generator; both guarantee the invariants checked by validate().
struct Instance {
  int width = 0;
  int height = 0;
  std::set<Position> nodes;
  std::set<Position> highways;
  std::map<StationId, Position> stations;
  std::map<ShelfId, Position> shelves;
  std::map<RobotId, RobotPlacement> robots;
  std::map<std::pair<ProductId, ShelfId>, int> stock;
  std::map<OrderId, Order> orders;

  bool is_node(const Position& p) const { return nodes.count(p) != 0; }
  bool is_highway(const Position& p) const { return highways.count(p) != 0; }
  bool is_station(const Position& p) const;

  int total_units() const;
  std::set<ProductId> products() const;

  bool operator==(const Instance&) const = default;
};

class InstanceError : public std::runtime_error {
 public:
  enum class Kind {
    MissingNode,
    DanglingReference,
    DuplicatePlacement,
    QuantityNonPositive,
    InadmissibleAttribute,
    StationOnHighway,
    Occupied,
    NotInitFact,
  };

  InstanceError(Kind kind, std::string detail);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(InstanceError::Kind kind);

/// Throws InstanceError on the first violated invariant.
void validate(const Instance& inst);

/// Reports whether `inst` satisfies the singleton alignment used by the M
/// family: as many orders as robots, one single-unit line per order, every
/// ordered product on exactly one shelf with one unit, at most one product
/// per shelf. Returns human-readable problems, empty when aligned.
std::vector<std::string> alignment_problems(const Instance& inst);

}  // namespace logibench
