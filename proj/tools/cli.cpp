#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <sstream>

#include "logibench/checker.hpp"
#include "logibench/facts_io.hpp"
#include "logibench/generator.hpp"
#include "logibench/json_io.hpp"
#include "logibench/planner.hpp"
#include "logibench/service.hpp"

namespace logibench {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Input errors map to kUsage, everything else raised while running to kFailure.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path, std::istream& in) {
  if (path != "-") return read_file(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class F>
auto parse_input(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const SyntaxError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const ArityError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const UnknownPredicate& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const InstanceError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const PlanError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const AssignmentError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const std::ios_base::failure& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

DomainVariant variant_of(const std::string& domain, bool m_aligned) {
  const auto d = parse_domain(domain);
  if (!d) throw UsageError("unknown domain " + domain);
  return DomainVariant(*d, m_aligned);
}

// Returns false and reports when --m-aligned was requested but does not hold.
bool check_alignment(const Instance& inst, bool requested, std::ostream& err) {
  if (!requested) return true;
  const auto problems = alignment_problems(inst);
  for (const auto& p : problems) err << "not aligned: " << p << "\n";
  return problems.empty();
}

struct GenArgs {
  GenConfig cfg;
  std::string template_path;
  std::string out_dir;
  std::string batch;
};

struct CheckArgs {
  std::string domain = "A";
  bool m_aligned = false;
  std::string json;
  bool trace = false;
  std::string instance;
  std::string plan;
};

struct SolveArgs {
  std::string domain = "A";
  bool m_aligned = false;
  std::string assign = "none";
  std::string positions = "paired";
  int max_horizon = 100;
  long budget_ms = 0;
  std::string stats;
  std::string instance;
};

struct ServeArgs {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

int run_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.batch.empty()) {
    BatchConfig batch = parse_input("batch " + a.batch, [&] { return BatchConfig::from_yaml(read_file(a.batch)); });
    if (!a.out_dir.empty()) batch.output_dir = a.out_dir;
    for (const auto& entry : run_batch(batch)) out << entry.path << "\t" << entry.seed << "\n";
    return kOk;
  }
  GenConfig cfg = a.cfg;
  if (!a.template_path.empty()) {
    cfg.template_path = a.template_path;
    cfg.template_instance = parse_input("template " + a.template_path, [&] { return read_instance(read_file(a.template_path)); });
  }
  try {
    cfg.validate();
  } catch (const GenError& e) {
    throw UsageError(e.what());
  }
  if (cfg.N == 1 && a.out_dir.empty()) {
    out << generate(cfg, 1).text;
    return kOk;
  }
  const std::filesystem::path dir = a.out_dir.empty() ? "." : a.out_dir;
  std::filesystem::create_directories(dir);
  for (int i = 1; i <= cfg.N; ++i) {
    const GeneratedInstance g = generate(cfg, i);
    const auto path = dir / g.name;
    write_file(path.string(), g.text);
    out << path.string() << "\n";
  }
  err << "wrote " << cfg.N << (cfg.N == 1 ? " instance" : " instances") << " to " << dir.string() << "\n";
  return kOk;
}

int run_check(const CheckArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  if (a.instance == "-" && a.plan == "-") throw UsageError("instance and plan cannot both be read from stdin");
  const DomainVariant variant = variant_of(a.domain, a.m_aligned);
  const Instance inst = parse_input("instance " + a.instance, [&] { return read_instance(slurp(a.instance, in)); });
  const Plan plan = parse_input("plan " + a.plan, [&] { return read_plan(slurp(a.plan, in), inst); });
  if (!check_alignment(inst, a.m_aligned, err)) return kFailure;
  const DiagnosticReport report = check_plan(inst, plan, variant, CheckOptions{a.trace || !a.json.empty()});
  // stdout carries only the err facts; the count header goes to stderr.
  out << format_facts(to_facts(report));
  if (!a.json.empty()) write_file(a.json, to_json(report, a.trace).dump(2) + "\n");
  const std::size_t n = report.diagnostics.size();
  if (n == 0) {
    err << "plan valid in " << variant.label() << " (horizon " << plan.horizon << ")\n";
    return kOk;
  }
  err << "% " << n << (n == 1 ? " error" : " errors") << "\n";
  return kFailure;
}

int run_solve(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  DomainVariant variant = variant_of(a.domain, a.m_aligned);
  const auto positions = parse_position_encoding(a.positions);
  if (!positions) throw UsageError("--positions must be paired or split");
  if (a.max_horizon < 0) throw UsageError("--max-horizon must be non-negative");
  const Instance inst = parse_input("instance " + a.instance, [&] { return read_instance(slurp(a.instance, in)); });
  if (!check_alignment(inst, a.m_aligned, err)) return kFailure;

  std::optional<Assignment> assignment;
  if (a.assign == "compute") {
    try {
      assignment = compute_assignment(inst, variant);
    } catch (const AssignmentError& e) {
      err << "no feasible assignment: " << e.what() << "\n";
      return kFailure;
    }
  } else if (a.assign != "none") {
    assignment = parse_input("assignment " + a.assign,
                             [&] { return assignment_from_facts(parse_facts(read_file(a.assign)), inst); });
    parse_input("assignment " + a.assign, [&] { return apply_assignment(inst, *assignment, variant.m_restricted); });
  }
  if (assignment) variant.assigned = true;

  SolveOptions opt;
  opt.positions = *positions;
  if (a.budget_ms > 0) opt.budget = std::chrono::milliseconds(a.budget_ms);
  const auto start = std::chrono::steady_clock::now();
  const SolveResult res = solve_min_makespan(inst, variant, a.max_horizon, assignment ? &*assignment : nullptr, opt);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  if (!a.stats.empty()) {
    Json stats = to_json(res.stats);
    stats["status"] = to_string(res.status);
    stats["variant"] = variant.label();
    stats["positions"] = to_string(*positions);
    stats["elapsed_ms"] = elapsed.count();
    if (res.solved()) stats["makespan"] = res.makespan();
    else stats["horizon"] = res.horizon;
    if (!res.reason.empty()) stats["reason"] = res.reason;
    if (assignment) stats["assignment"] = to_json(*assignment);
    write_file(a.stats, stats.dump(2) + "\n");
  }
  switch (res.status) {
    case SolveResult::Status::Plan:
      out << serialize(res.plan, variant.base);
      err << "makespan " << res.makespan() << " in " << variant.label() << "\n";
      return kOk;
    case SolveResult::Status::Unsat:
      err << "unsat up to horizon " << res.horizon << "\n";
      return kFailure;
    case SolveResult::Status::Unknown:
      err << "unknown: " << res.reason << "\n";
      return kFailure;
  }
  return kFailure;
}

int run_serve(const ServeArgs& a, std::ostream& err) {
  Service service(ServiceOptions{a.bind, a.port, a.static_dir});
  try {
    const int port = service.bind();
    err << "listening on http://" << a.bind << ":" << port << "\n";
  } catch (const BindError& e) {
    err << e.what() << "\n";
    return kFailure;
  }
  service.listen();
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Warehouse intra-logistics benchmark toolkit.", "logibench"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string("logibench v") + kToolVersion);
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate benchmark instances.");
  g->add_option("-x", gen.cfg.x, "grid width");
  g->add_option("-y", gen.cfg.y, "grid height");
  g->add_option("-X", gen.cfg.X, "storage cluster width");
  g->add_option("-Y", gen.cfg.Y, "storage cluster height");
  g->add_option("-p", gen.cfg.p, "picking stations");
  g->add_option("-s", gen.cfg.s, "shelves");
  g->add_option("-r", gen.cfg.r, "robots");
  g->add_option("-P", gen.cfg.P, "products");
  g->add_option("-u", gen.cfg.u, "product units");
  g->add_option("-o", gen.cfg.o, "orders");
  g->add_flag("-H", gen.cfg.H, "structured layout with highways");
  g->add_option("-N", gen.cfg.N, "number of instances");
  g->add_flag("-I", gen.cfg.I, "incremental generation in threshold-sized chunks");
  g->add_option("--prs", gen.cfg.prs, "max distinct products per shelf (0 = unbounded)");
  g->add_option("--order-lines", gen.cfg.order_lines, "lines per order");
  g->add_option("--threshold", gen.cfg.threshold, "chunk size for -I (0 = whole stage)");
  g->add_option("--seed", gen.cfg.seed, "random seed");
  g->add_flag("--reach", gen.cfg.reach, "place shelves next to highways only");
  g->add_option("--template", gen.template_path, "partial instance providing the layout");
  g->add_option("--out", gen.out_dir, "output directory (stdout when omitted and -N 1)");
  g->add_option("--batch", gen.batch, "YAML batch file (preset, variants, output_dir)");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check a plan against an instance; prints err facts.");
  c->add_option("--domain", check.domain, "domain A, B, C or M")->check(CLI::IsMember({"A", "B", "C", "M"}));
  c->add_flag("--m-aligned", check.m_aligned, "require the singleton alignment of the ^M variants");
  c->add_option("--json", check.json, "write the full report as JSON to FILE");
  c->add_flag("--trace", check.trace, "include the state trace in the JSON report");
  c->add_option("instance", check.instance, "instance facts, - for stdin")->required();
  c->add_option("plan", check.plan, "plan facts, - for stdin")->required();

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute a minimal-makespan plan; prints occurs facts.");
  s->add_option("--domain", solve.domain, "domain A, B, C or M")->check(CLI::IsMember({"A", "B", "C", "M"}));
  s->add_flag("--m-aligned", solve.m_aligned, "require the singleton alignment of the ^M variants");
  s->add_option("--assign", solve.assign, "task assignment: none, compute, or a facts FILE");
  s->add_option("--positions", solve.positions, "position encoding: paired or split")
      ->check(CLI::IsMember({"paired", "split"}));
  s->add_option("--max-horizon", solve.max_horizon, "largest horizon tried");
  s->add_option("--budget-ms", solve.budget_ms, "wall-clock budget in ms (0 = none)");
  s->add_option("--stats", solve.stats, "write search statistics as JSON to FILE");
  s->add_option("instance", solve.instance, "instance facts, - for stdin")->required();

  ServeArgs serve;
  auto* v = app.add_subcommand("serve", "Run the HTTP service for the studio.");
  v->add_option("--bind", serve.bind, "address to bind");
  v->add_option("--port", serve.port, "port (0 = any free port)");
  v->add_option("--static", serve.static_dir, "directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return run_gen(gen, out, err);
    if (c->parsed()) return run_check(check, in, out, err);
    if (s->parsed()) return run_solve(solve, in, out, err);
    if (v->parsed()) return run_serve(serve, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace logibench
