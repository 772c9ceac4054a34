#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logibench/facts_io.hpp"
#include "logibench/instance.hpp"

namespace logibench::testing {

// Builds instance fact text for hand-made scenarios. Nodes cover the full
// width x height rectangle minus `holes`, numbered row-major.
struct Scenario {
  int width = 1;
  int height = 1;
  std::set<Position> holes;
  std::set<Position> highways;
  std::map<int, Position> stations;
  std::map<int, Position> shelves;
  std::map<int, Position> robots;
  std::map<int, int> carries;                   // robot -> shelf
  std::map<std::pair<int, int>, int> stock;     // (product, shelf) -> units
  std::map<int, int> order_station;             // order -> station
  std::map<std::pair<int, int>, int> lines;     // (order, product) -> units

  std::string text() const {
    std::ostringstream out;
    int id = 0;
    for (int y = 1; y <= height; ++y)
      for (int x = 1; x <= width; ++x) {
        if (holes.count({x, y})) continue;
        out << "init(object(node," << ++id << "),value(at,(" << x << "," << y << "))).\n";
      }
    id = 0;
    for (const auto& h : highways) out << "init(object(highway," << ++id << "),value(at,(" << h.x << "," << h.y << "))).\n";
    for (const auto& [i, p] : stations)
      out << "init(object(pickingStation," << i << "),value(at,(" << p.x << "," << p.y << "))).\n";
    for (const auto& [i, p] : shelves) out << "init(object(shelf," << i << "),value(at,(" << p.x << "," << p.y << "))).\n";
    for (const auto& [i, p] : robots) out << "init(object(robot," << i << "),value(at,(" << p.x << "," << p.y << "))).\n";
    for (const auto& [r, s] : carries) out << "init(object(robot," << r << "),value(carries," << s << ")).\n";
    for (const auto& [k, n] : stock)
      out << "init(object(product," << k.first << "),value(on,(" << k.second << "," << n << "))).\n";
    for (const auto& [o, st] : order_station) out << "init(object(order," << o << "),value(pickingStation," << st << ")).\n";
    for (const auto& [k, n] : lines)
      out << "init(object(order," << k.first << "),value(line,(" << k.second << "," << n << "))).\n";
    return out.str();
  }

  Instance build() const { return read_instance(text()); }
};

inline std::string data_path(const std::string& name) { return std::string(LOGIBENCH_TEST_DATA) + "/" + name; }

}  // namespace logibench::testing
