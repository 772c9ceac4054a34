#include "logibench/grid.hpp"

#include <algorithm>
#include <deque>

#include "logibench/domain.hpp"

namespace logibench {

GridGraph::GridGraph(const Instance& inst) {
  for (const auto& p : inst.nodes) {
    width_ = std::max(width_, p.x);
    height_ = std::max(height_, p.y);
  }
  positions_.assign(inst.nodes.begin(), inst.nodes.end());
  std::sort(positions_.begin(), positions_.end(),
            [](const Position& a, const Position& b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  lookup_.assign(static_cast<std::size_t>(width_ * height_), kNone);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const auto& p = positions_[i];
    if (p.x >= 1 && p.y >= 1) lookup_[static_cast<std::size_t>((p.y - 1) * width_ + (p.x - 1))] = static_cast<int>(i);
  }
  neighbours_.assign(positions_.size() * 4, kNone);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (int d = 0; d < 4; ++d) {
      const Position q = positions_[i] + kDirections[d];
      neighbours_[i * 4 + static_cast<std::size_t>(d)] = index(q);
    }
  }
}

std::vector<int> GridGraph::distances_from(int source) const {
  std::vector<int> dist(positions_.size(), kUnreachable);
  if (source == kNone) return dist;
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int d = 0; d < 4; ++d) {
      const int v = neighbour(u, d);
      if (v != kNone && dist[static_cast<std::size_t>(v)] == kUnreachable) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace logibench
