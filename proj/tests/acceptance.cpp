// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "logibench/checker.hpp"
#include "logibench/facts_io.hpp"
#include "logibench/generator.hpp"
#include "logibench/oracle.hpp"
#include "logibench/planner.hpp"
#include "suite.hpp"
#include "support.hpp"

using namespace logibench;
using namespace logibench::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Tiny instances with their oracle-verified optimal plans, shared by the
// oracle, checker and decoupling criteria.
struct SuiteCase {
  Instance inst;
  DomainVariant variant;
  int seed;
  SolveResult planner;
  SolveResult oracle;
};

std::vector<SuiteCase> suite;
double suite_seconds = 0;

Outcome round_trip() {
  struct Family {
    GenConfig base;
    std::vector<int> robots;
  };
  auto structured = [](int x, int y, int X, int Y, int p, int s, int P, int u, int o) {
    GenConfig c;
    c.x = x, c.y = y, c.X = X, c.Y = Y, c.p = p, c.H = true, c.s = s, c.P = P, c.u = u, c.o = o;
    return c;
  };
  GenConfig random_layout;
  random_layout.x = 12, random_layout.y = 10, random_layout.p = 2, random_layout.s = 30, random_layout.P = 40;
  random_layout.u = 90, random_layout.o = 10;
  const std::vector<Family> families = {
      {structured(11, 6, 4, 2, 1, 16, 16, 16, 8), {2, 4, 6, 8}},
      {structured(19, 9, 5, 2, 3, 45, 180, 540, 12), {2, 4, 6, 8, 10}},
      {structured(46, 15, 8, 2, 10, 320, 320, 960, 40), {10, 20, 30, 40}},
      {random_layout, {2, 4, 6}},
  };
  const auto t0 = Clock::now();
  int total = 0, equal = 0;
  for (const auto& fam : families) {
    for (int k = 0; k < 50; ++k) {
      GenConfig cfg = fam.base;
      cfg.r = fam.robots[static_cast<std::size_t>(k) % fam.robots.size()];
      cfg.seed = static_cast<std::uint64_t>(1000 + k);
      const GeneratedInstance g = generate(cfg, 1);
      const FactSet first = parse_facts(g.text);
      const Instance a = build_instance(first);
      const std::string again = serialize(a, first.header_comments);
      const FactSet second = parse_facts(again);
      const Instance b = build_instance(second);
      ++total;
      equal += a == g.instance && b == a && second.header_comments == first.header_comments &&
               serialize(b, second.header_comments) == again;
    }
  }
  const double secs = seconds_since(t0);
  return {equal == 200 && total == 200 && secs < 10.0,
          fmt("%d/%d instances equal after parse-serialize-parse, %.2f s (limit 10 s)", equal, total, secs)};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  int agree = 0, skipped = 0;
  std::map<std::string, int> per_variant;
  for (const auto& v : aligned_variants()) {
    int taken = 0;
    for (int seed = 1; taken < 50 && seed <= 200; ++seed) {
      const Instance inst = generate(tiny_config(seed), 1).instance;
      SuiteCase c{inst, v, seed, {}, {}};
      try {
        c.oracle = oracle_min_makespan(inst, v);
      } catch (const StateCapExceeded&) {
        ++skipped;
        continue;
      }
      c.planner = solve_min_makespan(inst, v, 64);
      agree += c.planner.solved() && c.oracle.solved() && c.planner.makespan() == c.oracle.makespan();
      ++taken;
      suite.push_back(std::move(c));
    }
    per_variant[v.label()] = taken;
  }
  suite_seconds = seconds_since(t0);
  std::string counts;
  for (const auto& [label, n] : per_variant) counts += " " + label + "=" + std::to_string(n);
  const bool full = suite.size() == 200;
  return {full && agree == 200 && suite_seconds < 900,
          fmt("%d/%zu makespans equal (tolerance 0), instances%s, %d over state cap, %.1f s (limit 900 s)", agree,
              suite.size(), counts.c_str(), skipped, suite_seconds)};
}

Outcome checker_soundness() {
  int clean = 0, plans = 0;
  std::vector<std::vector<std::pair<const SuiteCase*, Mutation>>> pools;
  for (const auto& c : suite) {
    for (const SolveResult* r : {&c.planner, &c.oracle}) {
      if (!r->solved()) continue;
      ++plans;
      clean += check_plan(c.inst, r->plan, c.variant).diagnostics.empty();
    }
    // interleave mutation classes so no single class dominates the sample
    std::map<std::string, std::vector<Mutation>> by_class;
    for (auto& m : mutations_of(c.inst, c.planner.plan, c.variant)) by_class[m.expected].push_back(std::move(m));
    std::vector<std::pair<const SuiteCase*, Mutation>> pool;
    for (std::size_t k = 0; pool.size() < 1000; ++k) {
      bool any = false;
      for (auto& [name, ms] : by_class) {
        if (k < ms.size()) {
          pool.emplace_back(&c, ms[k]);
          any = true;
        }
      }
      if (!any) break;
    }
    pools.push_back(std::move(pool));
  }
  // Round-robin over instances so every case contributes before any repeats.
  std::vector<std::pair<const SuiteCase*, Mutation>> picked;
  for (std::size_t depth = 0; picked.size() < 500; ++depth) {
    bool any = false;
    for (auto& pool : pools) {
      if (depth < pool.size() && picked.size() < 500) {
        picked.push_back(pool[depth]);
        any = true;
      }
    }
    if (!any) break;
  }
  int expected = 0, false_accepts = 0;
  std::map<std::string, int> classes;
  for (const auto& [c, m] : picked) {
    const DiagnosticReport r = check_plan(c->inst, m.plan, c->variant);
    false_accepts += r.valid();
    expected += reports(r, m.expected);
    ++classes[m.expected];
  }
  std::string mix;
  for (const auto& [name, n] : classes) mix += " " + name + "=" + std::to_string(n);
  return {plans > 0 && clean == plans && picked.size() == 500 && expected == 500 && false_accepts == 0,
          fmt("%d/%d optimal plans clean; %d/%zu mutations report the expected constraint, %d false accepts;%s",
              clean, plans, expected, picked.size(), false_accepts, mix.c_str())};
}

Outcome makespan_structure() {
  const auto t0 = Clock::now();
  double sum_m = 0;
  int ordered = 0, solved = 0;
  std::map<std::string, double> sums;
  for (int seed = 1; seed <= 30; ++seed) {
    const Instance inst = generate(small_config(static_cast<std::uint64_t>(seed)), 1).instance;
    std::map<Domain, int> ms;
    bool all = true;
    for (const auto& v : aligned_variants()) {
      const SolveResult r = solve_min_makespan(inst, v, 80);
      all &= r.solved();
      ms[v.base] = r.solved() ? r.makespan() : -1;
      sums[v.label()] += ms[v.base];
    }
    solved += all;
    sum_m += ms[Domain::M];
    ordered += all && ms[Domain::C] >= ms[Domain::M] && ms[Domain::B] == ms[Domain::A] && ms[Domain::B] >= ms[Domain::C];
  }
  const double mean_m = sum_m / 30;
  const double secs = seconds_since(t0);
  std::string means;
  for (const auto& v : aligned_variants()) means += fmt(" %s=%.2f", v.label().c_str(), sums[v.label()] / 30);
  return {solved == 30 && mean_m >= 4.0 && mean_m <= 8.0 && ordered == 30 && secs < 1800,
          fmt("mean makespans%s (M must lie in 6 +- 2); ordering holds on %d/30; %.1f s (limit 1800 s)", means.c_str(),
              ordered, secs)};
}

Outcome assignment_decoupling() {
  int total = 0, valid = 0, within_one = 0, count_drop = 0, expanded_drop = 0;
  std::map<std::string, std::pair<int, int>> per_variant;  // label -> (drops, total)
  for (const auto& c : suite) {
    DomainVariant assigned = c.variant;
    assigned.assigned = true;
    const Assignment a = compute_assignment(c.inst, assigned);
    const SolveResult r = solve_min_makespan(c.inst, assigned, 64, &a);
    ++total;
    if (!r.solved()) continue;
    valid += check_plan(c.inst, r.plan, c.variant).valid();
    within_one += r.makespan() - c.planner.makespan() <= 1;
    expanded_drop += r.stats.expanded < c.planner.stats.expanded;
    const int h = c.planner.makespan();
    const auto free_count = count_bounded_states(c.inst, h, c.variant);
    const auto fixed_count = count_bounded_states(c.inst, h, assigned, &a);
    const bool drop = free_count && fixed_count && *fixed_count < *free_count;
    count_drop += drop;
    per_variant[c.variant.label()].first += drop;
    per_variant[c.variant.label()].second += 1;
  }
  const double f_within = total ? static_cast<double>(within_one) / total : 0;
  const double f_drop = total ? static_cast<double>(count_drop) / total : 0;
  std::string split;
  for (const auto& [label, n] : per_variant) split += fmt(" %s=%d/%d", label.c_str(), n.first, n.second);
  return {total > 0 && valid == total && f_within >= 0.8 && f_drop >= 0.9,
          fmt("%d/%d assigned plans valid unassigned; makespan +<=1 on %.1f%% (need 80%%); bounded state count drops "
              "on %.1f%% (need 90%%;%s); expanded nodes drop on %.1f%%",
              valid, total, 100 * f_within, 100 * f_drop, split.c_str(),
              total ? 100.0 * expanded_drop / total : 0.0)};
}

bool highway_reachable(const Instance& inst) {
  if (inst.highways.empty()) return false;
  std::set<Position> seen{*inst.highways.begin()};
  std::deque<Position> queue{*inst.highways.begin()};
  while (!queue.empty()) {
    const Position p = queue.front();
    queue.pop_front();
    for (const auto& d : kDirections)
      if (inst.is_highway(p + d) && seen.insert(p + d).second) queue.push_back(p + d);
  }
  if (seen.size() != inst.highways.size()) return false;
  for (const auto& [id, at] : inst.shelves) {
    bool next_to = false;
    for (const auto& d : kDirections) next_to |= seen.count(at + d) > 0;
    if (!next_to) return false;
  }
  return true;
}

Outcome generator_contract() {
  auto cfg = [](int x, int y, int X, int Y, int p) {
    GenConfig c;
    c.x = x, c.y = y, c.X = X, c.Y = Y, c.p = p, c.H = true;
    return c;
  };
  const std::vector<std::tuple<GenConfig, std::size_t, std::size_t>> calls = {
      {cfg(11, 6, 4, 2, 1), 66, 16}, {cfg(19, 9, 5, 2, 3), 171, 60}, {cfg(46, 15, 8, 2, 10), 690, 320}};
  int sizes = 0;
  std::string got;
  for (const auto& [c, nodes, storage] : calls) {
    const Layout l = layout(c);
    sizes += l.partial.nodes.size() == nodes && l.storage.size() == storage;
    got += fmt(" %zu/%zu", l.partial.nodes.size(), l.storage.size());
  }

  int reach_ok = 0, reach_total = 0;
  for (auto [x, y, X, Y, p, s] : std::vector<std::array<int, 6>>{{13, 11, 3, 3, 2, 20}, {19, 9, 5, 2, 3, 30}}) {
    GenConfig c = cfg(x, y, X, Y, p);
    c.s = s, c.r = 3, c.reach = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      c.seed = seed;
      ++reach_total;
      reach_ok += highway_reachable(generate(c, 1).instance);
    }
  }

  const fs::path root = fs::temp_directory_path() / ("logibench_acceptance_" + std::to_string(::getpid()));
  auto run = [&](const std::string& sub) {
    BatchConfig b = BatchConfig::from_yaml(
        "preset: {x: 11, y: 6, X: 4, Y: 2, p: 1, s: 16, P: 16, u: 16, H: true, prs: 1, N: 10, seed: 7}\n"
        "variants:\n  - r2: {r: 2, o: 2}\n  - r4: {r: 4, o: 4}\n  - r8: {r: 8, o: 8}\n");
    b.output_dir = (root / sub).string();
    std::map<std::string, std::string> files;
    for (const auto& e : run_batch(b)) files[fs::relative(e.path, b.output_dir).string()] = read_file(e.path);
    return files;
  };
  const auto first = run("a");
  const auto second = run("b");
  fs::remove_all(root);
  const bool identical = !first.empty() && first == second;
  return {sizes == 3 && reach_ok == reach_total && identical,
          fmt("nodes/storage%s (want 66/16 171/60 690/320); --reach BFS ok %d/%d; batch rerun of %zu files %s", got.c_str(),
              reach_ok, reach_total, first.size(), identical ? "byte-identical" : "differs")};
}

Outcome error_format() {
  const std::string inst = data_path("unfilled_instance.lp");
  const std::string plan = data_path("unfilled_plan.lp");
  const std::vector<const char*> argv{"logibench", "check", "--domain", "A", inst.c_str(), plan.c_str()};
  std::istringstream in;
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  const std::string want = "err(goal,unfilledOrder,(3,3,1,11)).\n";
  std::string shown = out.str();
  if (!shown.empty() && shown.back() == '\n') shown.pop_back();
  return {out.str() == want && code == 1, fmt("stdout \"%s\", exit %d", shown.c_str(), code)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"round-trip corpus", round_trip},
      {"oracle equivalence", oracle_equivalence},
      {"checker soundness and sensitivity", checker_soundness},
      {"makespan structure", makespan_structure},
      {"assignment decoupling", assignment_decoupling},
      {"generator contract", generator_contract},
      {"error-format fidelity", error_format},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed ? 1 : 0;
}
