#include "logibench/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "logibench/facts_io.hpp"
#include "logibench/rng.hpp"

namespace logibench {

GenError::GenError(Kind kind, std::string stage, std::string detail)
    : std::runtime_error(stage + ": " + detail), kind_(kind), stage_(std::move(stage)) {}

namespace {

using GK = GenError::Kind;

bool row_major_less(const Position& a, const Position& b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); }

// Evenly spaced columns for `count` objects on a row of `width` squares.
std::vector<int> spread(int count, int width) {
  std::vector<int> xs;
  for (int i = 0; i < count; ++i) xs.push_back((2 * i + 1) * width / (2 * count) + 1);
  return xs;
}

Layout structured_layout(const GenConfig& cfg) {
  Layout out;
  Instance& inst = out.partial;
  inst.width = cfg.x;
  inst.height = cfg.y;
  for (int yy = 1; yy <= cfg.y; ++yy) {
    for (int xx = 1; xx <= cfg.x; ++xx) inst.nodes.insert({xx, yy});
  }
  if (cfg.p > cfg.x) throw GenError(GK::CapacityExceeded, "pickingStation", "more stations than columns");
  if (cfg.r > cfg.x) throw GenError(GK::CapacityExceeded, "robot", "more robots than columns");
  // Interior rows 2..y-1: clusters of X x Y storage squares separated by
  // one-square highway aisles, with a highway ring around them.
  if (cfg.y >= 3) {
    const int kx = (cfg.x - 1) / (cfg.X + 1);
    const int ky = (cfg.y - 3) / (cfg.Y + 1);
    std::set<Position> storage;
    for (int j = 0; j < ky; ++j) {
      for (int i = 0; i < kx; ++i) {
        for (int dy = 0; dy < cfg.Y; ++dy) {
          for (int dx = 0; dx < cfg.X; ++dx) storage.insert({2 + i * (cfg.X + 1) + dx, 3 + j * (cfg.Y + 1) + dy});
        }
      }
    }
    for (int yy = 2; yy < cfg.y; ++yy) {
      for (int xx = 1; xx <= cfg.x; ++xx) {
        if (!storage.count({xx, yy})) inst.highways.insert({xx, yy});
      }
    }
    out.storage.assign(storage.begin(), storage.end());
    std::sort(out.storage.begin(), out.storage.end(), row_major_less);
  }
  int id = 0;
  for (int xx : spread(cfg.p, cfg.x)) inst.stations[++id] = Position{xx, 1};
  id = 0;
  for (int xx : spread(cfg.r, cfg.x)) inst.robots[++id] = RobotPlacement{{xx, cfg.y}, std::nullopt};
  return out;
}

Layout random_layout(const GenConfig& cfg) {
  Layout out;
  Instance& inst = out.partial;
  inst.width = cfg.x;
  inst.height = cfg.y;
  std::vector<Position> squares;
  for (int yy = 1; yy <= cfg.y; ++yy) {
    for (int xx = 1; xx <= cfg.x; ++xx) {
      inst.nodes.insert({xx, yy});
      squares.push_back({xx, yy});
    }
  }
  if (cfg.p > static_cast<int>(squares.size())) throw GenError(GK::CapacityExceeded, "pickingStation", "grid too small");
  if (cfg.r > static_cast<int>(squares.size())) throw GenError(GK::CapacityExceeded, "robot", "grid too small");
  RandomStream stations_rng(cfg.seed, "layout/stations");
  auto free_squares = squares;
  auto station_at = stations_rng.draw(free_squares, static_cast<std::size_t>(cfg.p));
  std::sort(station_at.begin(), station_at.end(), row_major_less);
  int id = 0;
  for (const auto& p : station_at) inst.stations[++id] = p;
  RandomStream robots_rng(cfg.seed, "layout/robots");
  auto robot_squares = squares;
  auto robot_at = robots_rng.draw(robot_squares, static_cast<std::size_t>(cfg.r));
  std::sort(robot_at.begin(), robot_at.end(), row_major_less);
  id = 0;
  for (const auto& p : robot_at) inst.robots[++id] = RobotPlacement{p, std::nullopt};
  out.storage = free_squares;
  std::sort(out.storage.begin(), out.storage.end(), row_major_less);
  return out;
}

Layout template_layout(const GenConfig& cfg) {
  Layout out;
  out.partial = *cfg.template_instance;
  try {
    validate(out.partial);
  } catch (const InstanceError& e) {
    throw GenError(GK::TemplateInvalid, "template", e.what());
  }
  std::set<Position> taken;
  for (const auto& [id, at] : out.partial.shelves) taken.insert(at);
  for (const auto& p : out.partial.nodes) {
    if (!out.partial.is_highway(p) && !out.partial.is_station(p) && !taken.count(p)) out.storage.push_back(p);
  }
  std::sort(out.storage.begin(), out.storage.end(), row_major_less);
  return out;
}

bool next_to_highway(const Instance& inst, const Position& p) {
  for (const auto& d : std::initializer_list<Position>{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}) {
    if (inst.is_highway(p + d)) return true;
  }
  return false;
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw GenError(GK::ConfigInvalid, key, "expected an integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw GenError(GK::ConfigInvalid, key, "expected a boolean, got '" + value + "'");
}

}  // namespace

void GenConfig::validate() const {
  auto fail = [](const std::string& what) { throw GenError(GK::ConfigInvalid, "config", what); };
  if (!template_instance && (x < 1 || y < 1)) fail("grid dimensions must be positive");
  if (H && (X < 1 || Y < 1)) fail("storage cluster dimensions must be positive");
  for (int v : {p, s, r, P, u, o, prs, threshold}) {
    if (v < 0) fail("counts must be non-negative");
  }
  if (N < 1) fail("-N must be at least 1");
  if (order_lines < 1) fail("--order-lines must be at least 1");
  if (u < P) fail("fewer units than products (-u < -P)");
  if (P > 0 && s == 0 && !(template_instance && !template_instance->shelves.empty())) fail("products need shelves");
  if (prs > 0 && P > s * prs && !template_instance) fail("more products than shelves can hold (-P > -s * --prs)");
  if (o > 0 && P == 0) fail("orders need products");
}

std::string GenConfig::invocation(std::uint64_t file_seed) const {
  std::ostringstream os;
  os << "gen";
  if (template_path) {
    os << " --template " << *template_path;
  } else {
    os << " -x " << x << " -y " << y;
    if (H) os << " -X " << X << " -Y " << Y;
  }
  os << " -p " << p << " -s " << s << " -r " << r << " -P " << P << " -u " << u << " -o " << o;
  if (H) os << " -H";
  if (prs > 0) os << " --prs " << prs;
  if (order_lines != 1) os << " --order-lines " << order_lines;
  if (reach) os << " --reach";
  if (I) os << " -I";
  if (threshold > 0) os << " --threshold " << threshold;
  os << " --seed " << file_seed;
  return os.str();
}

Layout layout(const GenConfig& cfg) {
  cfg.validate();
  if (cfg.template_instance) return template_layout(cfg);
  return cfg.H ? structured_layout(cfg) : random_layout(cfg);
}

std::vector<int> split_rounds(int total, int threshold) {
  std::vector<int> rounds;
  if (total <= 0) return rounds;
  if (threshold <= 0 || threshold >= total) return {total};
  for (int done = 0; done < total; done += threshold) rounds.push_back(std::min(threshold, total - done));
  return rounds;
}

Instance populate(const Layout& lay, const GenConfig& cfg, PopulateTrace* trace) {
  Instance inst = lay.partial;
  const int chunk = cfg.I ? cfg.threshold : 0;
  auto record = [&](const std::string& stage, const std::vector<int>& rounds) {
    if (trace) trace->rounds[stage] = rounds;
  };

  // Shelves on storage squares; each chunk extends the fixed earlier choice.
  if (inst.shelves.empty() && cfg.s > 0) {
    std::vector<Position> candidates;
    for (const auto& p : lay.storage) {
      if (!cfg.reach || next_to_highway(inst, p)) candidates.push_back(p);
    }
    if (cfg.s > static_cast<int>(candidates.size())) {
      throw GenError(cfg.reach ? GK::Infeasible : GK::CapacityExceeded, "shelves",
                     std::to_string(cfg.s) + " shelves for " + std::to_string(candidates.size()) + " admissible squares");
    }
    RandomStream rng(cfg.seed, "shelves");
    const auto rounds = split_rounds(cfg.s, chunk);
    std::vector<Position> placed;
    for (int k : rounds) {
      auto more = rng.draw(candidates, static_cast<std::size_t>(k));
      placed.insert(placed.end(), more.begin(), more.end());
    }
    record("shelves", rounds);
    std::sort(placed.begin(), placed.end(), row_major_less);
    int id = 0;
    for (const auto& p : placed) inst.shelves[++id] = p;
  }

  // Each product goes to one shelf with spare product capacity.
  if (inst.stock.empty() && cfg.P > 0) {
    if (inst.shelves.empty()) throw GenError(GK::Infeasible, "products", "no shelves to stock");
    std::map<ShelfId, int> capacity;
    for (const auto& [id, at] : inst.shelves) capacity[id] = cfg.prs > 0 ? cfg.prs : cfg.P;
    RandomStream rng(cfg.seed, "products");
    const auto rounds = split_rounds(cfg.P, chunk);
    ProductId next_product = 1;
    for (int k : rounds) {
      for (int i = 0; i < k; ++i, ++next_product) {
        std::vector<ShelfId> open;
        for (const auto& [id, cap] : capacity) {
          if (cap > 0) open.push_back(id);
        }
        if (open.empty()) throw GenError(GK::Infeasible, "products", "no shelf capacity left");
        const ShelfId shelf = open[static_cast<std::size_t>(rng.below(open.size()))];
        --capacity[shelf];
        inst.stock[{next_product, shelf}] = 1;
      }
    }
    record("products", rounds);

    // Remaining units spread over the placed products.
    std::vector<std::pair<ProductId, ShelfId>> placements;
    for (const auto& [key, units] : inst.stock) placements.push_back(key);
    RandomStream units_rng(cfg.seed, "units");
    const auto unit_rounds = split_rounds(cfg.u - cfg.P, chunk);
    for (int k : unit_rounds) {
      for (int i = 0; i < k; ++i) ++inst.stock[placements[static_cast<std::size_t>(units_rng.below(placements.size()))]];
    }
    record("units", unit_rounds);
  }

  // Orders: distinct products per order, preferring products not yet ordered;
  // stations assigned round-robin.
  if (inst.orders.empty() && cfg.o > 0) {
    if (inst.stations.empty()) throw GenError(GK::Infeasible, "orders", "no picking station");
    std::map<ProductId, int> unreserved;
    for (const auto& [key, units] : inst.stock) unreserved[key.first] += units;
    std::set<ProductId> used;
    std::vector<StationId> station_ids;
    for (const auto& [id, at] : inst.stations) station_ids.push_back(id);
    RandomStream rng(cfg.seed, "orders");
    const auto rounds = split_rounds(cfg.o, chunk);
    OrderId next_order = 1;
    for (int k : rounds) {
      for (int i = 0; i < k; ++i, ++next_order) {
        std::vector<ProductId> fresh;
        std::vector<ProductId> reused;
        for (const auto& [product, left] : unreserved) {
          if (left > 0) (used.count(product) ? reused : fresh).push_back(product);
        }
        const std::size_t want = static_cast<std::size_t>(cfg.order_lines);
        if (fresh.empty() && reused.empty()) {
          throw GenError(GK::Infeasible, "orders", "stock exhausted at order " + std::to_string(next_order));
        }
        auto products = rng.draw(fresh, std::min(want, fresh.size()));
        if (products.size() < want) {
          auto extra = rng.draw(reused, std::min(want - products.size(), reused.size()));
          products.insert(products.end(), extra.begin(), extra.end());
        }
        Order order;
        order.station = station_ids[static_cast<std::size_t>(next_order - 1) % station_ids.size()];
        for (ProductId product : products) {
          const int units = rng.between(1, unreserved[product]);
          unreserved[product] -= units;
          used.insert(product);
          order.lines[product] = units;
        }
        inst.orders[next_order] = std::move(order);
      }
    }
    record("orders", rounds);
  }

  try {
    validate(inst);
  } catch (const InstanceError& e) {
    throw GenError(GK::Infeasible, "validate", e.what());
  }
  return inst;
}

NameFields NameFields::of(const Instance& inst) {
  NameFields f;
  f.x = inst.width;
  f.y = inst.height;
  f.nodes = static_cast<int>(inst.nodes.size());
  f.r = static_cast<int>(inst.robots.size());
  f.s = static_cast<int>(inst.shelves.size());
  f.p = static_cast<int>(inst.stations.size());
  f.P = static_cast<int>(inst.products().size());
  f.u = inst.total_units();
  f.o = static_cast<int>(inst.orders.size());
  return f;
}

std::string instance_name(const NameFields& f, int index) {
  char idx[16];
  std::snprintf(idx, sizeof idx, "%03d", index);
  std::ostringstream os;
  os << 'x' << f.x << "_y" << f.y << "_n" << f.nodes << "_r" << f.r << "_s" << f.s << "_ps" << f.p << "_pr" << f.P
     << "_u" << f.u << "_o" << f.o << "_N" << idx << ".lp";
  return os.str();
}

std::uint64_t file_seed(std::uint64_t seed, int index) {
  return index <= 1 ? seed : derive_seed(seed, "file/" + std::to_string(index));
}

GeneratedInstance generate(const GenConfig& cfg, int index) {
  GeneratedInstance out;
  out.seed = file_seed(cfg.seed, index);
  GenConfig local = cfg;
  local.seed = out.seed;
  out.instance = populate(layout(local), local);
  out.name = instance_name(NameFields::of(out.instance), index);
  out.header = {std::string("logibench v") + kToolVersion, "invocation: " + cfg.invocation(out.seed),
                "seed: " + std::to_string(out.seed)};
  out.text = serialize(out.instance, out.header);
  return out;
}

void apply_overrides(GenConfig& cfg, const GenOverrides& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key == "x") cfg.x = parse_int(key, value);
    else if (key == "y") cfg.y = parse_int(key, value);
    else if (key == "X") cfg.X = parse_int(key, value);
    else if (key == "Y") cfg.Y = parse_int(key, value);
    else if (key == "p") cfg.p = parse_int(key, value);
    else if (key == "s") cfg.s = parse_int(key, value);
    else if (key == "r") cfg.r = parse_int(key, value);
    else if (key == "P") cfg.P = parse_int(key, value);
    else if (key == "u") cfg.u = parse_int(key, value);
    else if (key == "o") cfg.o = parse_int(key, value);
    else if (key == "prs") cfg.prs = parse_int(key, value);
    else if (key == "order_lines" || key == "order-lines") cfg.order_lines = parse_int(key, value);
    else if (key == "H") cfg.H = parse_bool(key, value);
    else if (key == "reach") cfg.reach = parse_bool(key, value);
    else if (key == "N") cfg.N = parse_int(key, value);
    else if (key == "I") cfg.I = parse_bool(key, value);
    else if (key == "threshold") cfg.threshold = parse_int(key, value);
    else if (key == "seed") {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw GenError(GK::ConfigInvalid, key, "expected an unsigned integer, got '" + value + "'");
      }
      cfg.seed = v;
    } else if (key == "template") {
      cfg.template_path = value;
      try {
        cfg.template_instance = read_instance(read_file(value));
      } catch (const std::exception& e) {
        throw GenError(GK::TemplateInvalid, "template", e.what());
      }
    } else {
      throw GenError(GK::ConfigInvalid, key, "unknown generator option");
    }
  }
}

namespace {

GenOverrides overrides_from(const YAML::Node& node, const std::string& where) {
  GenOverrides out;
  if (!node) return out;
  if (!node.IsMap()) throw GenError(GK::ConfigInvalid, where, "expected a mapping");
  for (const auto& kv : node) {
    if (!kv.second.IsScalar()) throw GenError(GK::ConfigInvalid, where, "option values must be scalars");
    out[kv.first.as<std::string>()] = kv.second.as<std::string>();
  }
  return out;
}

}  // namespace

BatchConfig BatchConfig::from_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw GenError(GK::ConfigInvalid, "batch", e.what());
  }
  if (!root.IsMap()) throw GenError(GK::ConfigInvalid, "batch", "top level must be a mapping");
  BatchConfig batch;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "preset" && key != "variants" && key != "output_dir") {
      throw GenError(GK::ConfigInvalid, "batch", "unknown key " + key);
    }
  }
  batch.preset = overrides_from(root["preset"], "preset");
  if (root["output_dir"]) batch.output_dir = root["output_dir"].as<std::string>();
  if (const auto variants = root["variants"]) {
    if (!variants.IsSequence()) throw GenError(GK::ConfigInvalid, "variants", "expected a list");
    for (const auto& item : variants) {
      if (!item.IsMap() || item.size() != 1) {
        throw GenError(GK::ConfigInvalid, "variants", "each variant is a single name: {overrides} entry");
      }
      const auto kv = *item.begin();
      const auto name = kv.first.as<std::string>();
      batch.variants.emplace_back(name, overrides_from(kv.second, name));
    }
  }
  return batch;
}

std::vector<ManifestEntry> run_batch(const BatchConfig& batch) {
  namespace fs = std::filesystem;
  std::vector<ManifestEntry> manifest;
  for (const auto& [name, overrides] : batch.variants) {
    GenConfig cfg;
    std::vector<GeneratedInstance> files;
    try {
      apply_overrides(cfg, batch.preset);
      apply_overrides(cfg, overrides);
      cfg.seed = derive_seed(cfg.seed, "variant/" + name);
      for (int i = 1; i <= cfg.N; ++i) files.push_back(generate(cfg, i));
    } catch (const GenError& e) {
      throw GenError(e.kind(), name + "/" + e.stage(), e.what());
    }
    const fs::path dir = fs::path(batch.output_dir) / name;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw GenError(GK::Io, dir.string(), ec.message());
    for (const auto& g : files) {
      const fs::path path = dir / g.name;
      try {
        write_file(path.string(), g.text);
      } catch (const std::exception& e) {
        throw GenError(GK::Io, path.string(), e.what());
      }
      manifest.push_back(ManifestEntry{name, path.string(), g.seed});
    }
  }
  return manifest;
}

}  // namespace logibench
