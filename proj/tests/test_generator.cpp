#include <gtest/gtest.h>

#include <deque>
#include <filesystem>

#include <unistd.h>

#include "logibench/facts_io.hpp"
#include "logibench/generator.hpp"
#include "suite.hpp"

using namespace logibench;
using namespace logibench::testing;
namespace fs = std::filesystem;

namespace {

GenConfig structured(int x, int y, int X, int Y, int p) {
  GenConfig cfg;
  cfg.x = x, cfg.y = y, cfg.X = X, cfg.Y = Y, cfg.p = p, cfg.H = true;
  return cfg;
}

GenError::Kind error_kind(const GenConfig& cfg) {
  try {
    generate(cfg, 1);
  } catch (const GenError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "generation unexpectedly succeeded";
  return GenError::Kind::Io;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("logibench_gen_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

// Highway squares connected to the first highway square in row order.
std::set<Position> highway_reach(const Instance& inst) {
  std::set<Position> seen;
  std::deque<Position> queue;
  for (const auto& h : inst.highways) {
    queue.push_back(h);
    seen.insert(h);
    break;
  }
  while (!queue.empty()) {
    const Position p = queue.front();
    queue.pop_front();
    for (const auto& d : kDirections) {
      const Position q = p + d;
      if (inst.is_highway(q) && seen.insert(q).second) queue.push_back(q);
    }
  }
  return seen;
}

bool touches(const std::set<Position>& area, const Position& p) {
  for (const auto& d : kDirections)
    if (area.count(p + d)) return true;
  return false;
}

}  // namespace

TEST(Layout, BenchmarkSizes) {
  const Layout small = layout(structured(11, 6, 4, 2, 1));
  EXPECT_EQ(small.partial.nodes.size(), 66u);
  EXPECT_EQ(small.storage.size(), 16u);
  const Layout medium = layout(structured(19, 9, 5, 2, 3));
  EXPECT_EQ(medium.partial.nodes.size(), 171u);
  EXPECT_EQ(medium.storage.size(), 60u);
  const Layout large = layout(structured(46, 15, 8, 2, 10));
  EXPECT_EQ(large.partial.nodes.size(), 690u);
  EXPECT_EQ(large.storage.size(), 320u);
}

TEST(Layout, StructuredPlacement) {
  GenConfig cfg = structured(11, 6, 4, 2, 3);
  cfg.r = 4;
  const Layout l = layout(cfg);
  for (const auto& [id, at] : l.partial.stations) {
    EXPECT_EQ(at.y, 1);
    EXPECT_FALSE(l.partial.is_highway(at));
  }
  for (const auto& [id, robot] : l.partial.robots) EXPECT_EQ(robot.at.y, 6);
  for (const auto& p : l.storage) EXPECT_FALSE(l.partial.is_highway(p));
  // every non-storage interior square is a highway
  for (int y = 2; y <= 5; ++y)
    for (int x = 1; x <= 11; ++x)
      EXPECT_NE(l.partial.is_highway({x, y}), std::count(l.storage.begin(), l.storage.end(), Position{x, y}) == 1);
}

TEST(Layout, SingleNodeRandom) {
  GenConfig cfg;
  const GeneratedInstance g = generate(cfg, 1);
  EXPECT_EQ(g.instance.nodes.size(), 1u);
  EXPECT_TRUE(g.instance.highways.empty());
  EXPECT_TRUE(g.instance.robots.empty());
}

TEST(Populate, SmallMCall) {
  const Instance inst = generate(small_config(1), 1).instance;
  EXPECT_EQ(inst.shelves.size(), 16u);
  std::map<ShelfId, int> per_shelf;
  std::set<ProductId> products;
  for (const auto& [key, units] : inst.stock) {
    EXPECT_EQ(units, 1);
    ++per_shelf[key.second];
    EXPECT_TRUE(products.insert(key.first).second);
  }
  EXPECT_EQ(per_shelf.size(), 16u);
  for (const auto& [shelf, n] : per_shelf) EXPECT_EQ(n, 1);
  ASSERT_EQ(inst.orders.size(), 2u);
  for (const auto& [id, order] : inst.orders) {
    ASSERT_EQ(order.lines.size(), 1u);
    EXPECT_EQ(order.lines.begin()->second, 1);
  }
  EXPECT_TRUE(alignment_problems(inst).empty());
}

TEST(Populate, ThresholdRounds) {
  EXPECT_EQ(split_rounds(55, 20), (std::vector<int>{20, 20, 15}));
  EXPECT_EQ(split_rounds(55, 0), (std::vector<int>{55}));
  EXPECT_EQ(split_rounds(0, 20), std::vector<int>{});
  GenConfig cfg;
  cfg.x = 10, cfg.y = 10, cfg.s = 55, cfg.I = true, cfg.threshold = 20;
  const Layout l = layout(cfg);
  ASSERT_EQ(l.storage.size(), 100u);
  PopulateTrace trace;
  const Instance inst = populate(l, cfg, &trace);
  EXPECT_EQ(trace.rounds.at("shelves"), (std::vector<int>{20, 20, 15}));
  EXPECT_EQ(inst.shelves.size(), 55u);
}

TEST(Populate, IncrementalMatchesMonolithicCounts) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    GenConfig mono = structured(19, 9, 5, 2, 3);
    mono.s = 45, mono.r = 6, mono.P = 180, mono.u = 540, mono.o = 12, mono.seed = seed;
    GenConfig inc = mono;
    inc.I = true, inc.threshold = 20;
    const auto a = NameFields::of(generate(mono, 1).instance);
    const auto b = NameFields::of(generate(inc, 1).instance);
    EXPECT_EQ(instance_name(a, 1), instance_name(b, 1));
  }
}

TEST(Populate, UnitsEqualProductsGivesSingleUnits) {
  GenConfig cfg = structured(19, 9, 5, 2, 3);
  cfg.s = 60, cfg.P = 60, cfg.u = 60, cfg.prs = 1, cfg.r = 5, cfg.o = 5;
  const Instance inst = generate(cfg, 1).instance;
  for (const auto& [key, units] : inst.stock) EXPECT_EQ(units, 1);
  EXPECT_EQ(inst.products().size(), 60u);
}

TEST(Populate, CardinalityFidelity) {
  for (int seed = 1; seed <= 20; ++seed) {
    GenConfig cfg = seed % 2 ? structured(13, 8, 3, 2, 2) : GenConfig{};
    if (seed % 2 == 0) cfg.x = 9, cfg.y = 7, cfg.p = 3;
    cfg.s = 6 + seed % 5, cfg.r = 1 + seed % 4, cfg.P = 10, cfg.u = 25, cfg.o = 1 + seed % 6;
    cfg.order_lines = 1 + seed % 3;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const Instance inst = generate(cfg, 1).instance;
    EXPECT_NO_THROW(validate(inst));
    EXPECT_EQ(static_cast<int>(inst.nodes.size()), cfg.x * cfg.y);
    EXPECT_EQ(static_cast<int>(inst.robots.size()), cfg.r);
    EXPECT_EQ(static_cast<int>(inst.shelves.size()), cfg.s);
    EXPECT_EQ(static_cast<int>(inst.stations.size()), cfg.p);
    EXPECT_EQ(static_cast<int>(inst.products().size()), cfg.P);
    EXPECT_EQ(inst.total_units(), cfg.u);
    EXPECT_EQ(static_cast<int>(inst.orders.size()), cfg.o);
    for (const auto& [id, at] : inst.stations) EXPECT_FALSE(inst.is_highway(at));
    for (const auto& [id, order] : inst.orders) {
      EXPECT_GE(order.lines.size(), 1u);
      EXPECT_LE(static_cast<int>(order.lines.size()), cfg.order_lines);
    }
  }
}

TEST(Populate, AlignedWhenSingletonsAndRobotsMatchOrders) {
  for (int seed = 1; seed <= 20; ++seed) {
    EXPECT_TRUE(alignment_problems(generate(tiny_config(seed), 1).instance).empty()) << seed;
    EXPECT_TRUE(alignment_problems(generate(small_config(static_cast<std::uint64_t>(seed)), 1).instance).empty());
  }
}

TEST(Populate, ReachPlacesShelvesNextToHighways) {
  GenConfig cfg = structured(13, 11, 3, 3, 2);
  const Layout l = layout(cfg);
  std::size_t inner = 0;
  for (const auto& p : l.storage) inner += !touches(l.partial.highways, p);
  ASSERT_GT(inner, 0u);  // the cluster centres are not adjacent to a highway
  cfg.s = static_cast<int>(l.storage.size() - inner);
  cfg.reach = true;
  cfg.r = 2;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    const Instance inst = generate(cfg, 1).instance;
    const auto reach = highway_reach(inst);
    EXPECT_EQ(reach.size(), inst.highways.size());
    for (const auto& [id, at] : inst.shelves) EXPECT_TRUE(touches(reach, at)) << to_string(at);
  }
  cfg.s += 1;
  EXPECT_EQ(error_kind(cfg), GenError::Kind::Infeasible);
}

TEST(Naming, Format) {
  NameFields f{11, 6, 66, 8, 16, 1, 16, 16, 8};
  EXPECT_EQ(instance_name(f, 1), "x11_y6_n66_r8_s16_ps1_pr16_u16_o8_N001.lp");
  EXPECT_EQ(instance_name(f, 30), "x11_y6_n66_r8_s16_ps1_pr16_u16_o8_N030.lp");
  GenConfig cfg = structured(19, 9, 5, 2, 3);
  cfg.s = 45, cfg.r = 6, cfg.P = 180, cfg.u = 540, cfg.o = 12;
  const GeneratedInstance g = generate(cfg, 1);
  EXPECT_EQ(g.name, "x19_y9_n171_r6_s45_ps3_pr180_u540_o12_N001.lp");
  EXPECT_EQ(static_cast<int>(g.instance.nodes.size()), 19 * 9);
}

TEST(Header, VersionInvocationSeed) {
  const GeneratedInstance g = generate(small_config(42), 3);
  const FactSet facts = parse_facts(g.text);
  ASSERT_EQ(facts.header_comments.size(), 3u);
  EXPECT_EQ(facts.header_comments[0], std::string("logibench v") + kToolVersion);
  EXPECT_EQ(facts.header_comments[1],
            "invocation: gen -x 11 -y 6 -X 4 -Y 2 -p 1 -s 16 -r 2 -P 16 -u 16 -o 2 -H --prs 1 --seed " +
                std::to_string(g.seed));
  EXPECT_EQ(facts.header_comments[2], "seed: " + std::to_string(g.seed));
  EXPECT_NE(g.seed, 42u);
  EXPECT_EQ(generate(small_config(42), 1).seed, 42u);
}

TEST(Determinism, SameInputsSameBytes) {
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(generate(small_config(9), i).text, generate(small_config(9), i).text);
  EXPECT_NE(generate(small_config(9), 1).text, generate(small_config(9), 2).text);
}

TEST(Errors, Kinds) {
  GenConfig cfg = structured(11, 6, 4, 2, 1);
  cfg.P = 5, cfg.u = 4, cfg.s = 5;
  EXPECT_EQ(error_kind(cfg), GenError::Kind::ConfigInvalid);
  cfg.u = 5, cfg.s = 17;
  EXPECT_EQ(error_kind(cfg), GenError::Kind::CapacityExceeded);
  cfg.s = 2, cfg.prs = 1;
  EXPECT_EQ(error_kind(cfg), GenError::Kind::ConfigInvalid);
  GenConfig bad;
  EXPECT_THROW(apply_overrides(bad, {{"warp", "9"}}), GenError);
  EXPECT_THROW(apply_overrides(bad, {{"x", "eleven"}}), GenError);
  apply_overrides(bad, {{"x", "11"}, {"H", "true"}, {"prs", "1"}, {"seed", "77"}});
  EXPECT_EQ(bad.x, 11);
  EXPECT_TRUE(bad.H);
  EXPECT_EQ(bad.prs, 1);
  EXPECT_EQ(bad.seed, 77u);
}

TEST(Template, LayoutIsKept) {
  GenConfig base = structured(11, 6, 4, 2, 1);
  base.r = 3;
  const Instance partial = layout(base).partial;
  GenConfig cfg;
  cfg.template_instance = partial;
  cfg.template_path = "layout.lp";
  cfg.s = 10, cfg.P = 10, cfg.u = 20, cfg.o = 3;
  const GeneratedInstance g = generate(cfg, 1);
  EXPECT_EQ(g.instance.nodes, partial.nodes);
  EXPECT_EQ(g.instance.highways, partial.highways);
  EXPECT_EQ(g.instance.robots, partial.robots);
  EXPECT_EQ(g.instance.shelves.size(), 10u);
  for (const auto& [id, at] : g.instance.shelves) EXPECT_FALSE(g.instance.is_highway(at));
  EXPECT_NE(g.header[1].find("--template layout.lp"), std::string::npos);

  Instance broken = partial;
  broken.stations[9] = {40, 40};
  cfg.template_instance = broken;
  EXPECT_EQ(error_kind(cfg), GenError::Kind::TemplateInvalid);
}

TEST(Batch, VariantsTimesN) {
  const fs::path dir = scratch_dir("batch");
  const std::string yaml =
      "preset: {x: 11, y: 6, X: 4, Y: 2, p: 1, s: 16, P: 16, u: 16, H: true, prs: 1, N: 30, seed: 5}\n"
      "variants:\n"
      "  - r2: {r: 2, o: 2}\n"
      "  - r5: {r: 5, o: 5}\n"
      "  - r8: {r: 8, o: 8}\n"
      "  - r11: {r: 11, o: 11}\n"
      "output_dir: " +
      dir.string() + "\n";
  const BatchConfig batch = BatchConfig::from_yaml(yaml);
  const auto first = run_batch(batch);
  EXPECT_EQ(first.size(), 120u);
  std::map<std::string, std::string> bytes;
  for (const auto& e : first) bytes[e.path] = read_file(e.path);
  EXPECT_EQ(bytes.size(), 120u);
  const auto second = run_batch(batch);
  ASSERT_EQ(second.size(), first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].path, second[i].path);
    EXPECT_EQ(first[i].seed, second[i].seed);
    EXPECT_EQ(read_file(second[i].path), bytes[first[i].path]);
  }
  fs::remove_all(dir);
}

TEST(Batch, EmptyVariants) {
  const fs::path dir = scratch_dir("empty");
  const BatchConfig batch = BatchConfig::from_yaml("preset: {x: 3, y: 3}\nvariants: []\noutput_dir: " + dir.string() + "\n");
  EXPECT_TRUE(run_batch(batch).empty());
  fs::remove_all(dir);
}

TEST(Batch, ErrorsNameTheVariant) {
  const fs::path dir = scratch_dir("bad");
  const BatchConfig batch = BatchConfig::from_yaml(
      "preset: {x: 11, y: 6, X: 4, Y: 2, p: 1, H: true}\nvariants:\n  - crowded: {s: 99}\noutput_dir: " + dir.string() +
      "\n");
  try {
    run_batch(batch);
    FAIL();
  } catch (const GenError& e) {
    EXPECT_EQ(e.stage().rfind("crowded/", 0), 0u) << e.stage();
  }
  EXPECT_THROW(BatchConfig::from_yaml("preset: [1, 2]"), GenError);
  EXPECT_THROW(BatchConfig::from_yaml("presets: {}"), GenError);
  fs::remove_all(dir);
}
