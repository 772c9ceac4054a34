#pragma once

#include <limits>
#include <vector>

#include "logibench/instance.hpp"

namespace logibench {

/// Dense index over the nodes of an instance with 4-neighbour adjacency.
class GridGraph {
 public:
  static constexpr int kNone = -1;
  static constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

  explicit GridGraph(const Instance& inst);

  int size() const { return static_cast<int>(positions_.size()); }
  int width() const { return width_; }
  int height() const { return height_; }
  const Position& position(int node) const { return positions_[static_cast<std::size_t>(node)]; }
  /// Node index at (x,y) or kNone.
  int index(int x, int y) const {
    if (x < 1 || y < 1 || x > width_ || y > height_) return kNone;
    return lookup_[static_cast<std::size_t>((y - 1) * width_ + (x - 1))];
  }
  int index(const Position& p) const { return index(p.x, p.y); }
  /// Neighbour in direction d (kDirections order) or kNone.
  int neighbour(int node, int d) const { return neighbours_[static_cast<std::size_t>(node * 4 + d)]; }

  /// Breadth-first distances from `source` to every node.
  std::vector<int> distances_from(int source) const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Position> positions_;
  std::vector<int> lookup_;
  std::vector<int> neighbours_;
};

}  // namespace logibench
