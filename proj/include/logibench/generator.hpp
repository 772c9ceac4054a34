#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logibench/instance.hpp"

namespace logibench {

inline constexpr const char* kToolVersion = LOGIBENCH_VERSION;

/// Generator parameters; the short names follow the gen flags.
struct GenConfig {
  int x = 1;            // -x grid width
  int y = 1;            // -y grid height
  int X = 2;            // -X storage cluster width
  int Y = 2;            // -Y storage cluster height
  int p = 0;            // -p picking stations
  int s = 0;            // -s shelves
  int r = 0;            // -r robots
  int P = 0;            // -P products
  int u = 0;            // -u product units
  int o = 0;            // -o orders
  int prs = 0;          // --prs max distinct products per shelf, 0 = unbounded
  int order_lines = 1;  // --order-lines lines per order
  bool H = false;       // -H structured layout
  bool reach = false;   // --reach shelves adjacent to a highway
  int N = 1;            // -N instance count
  bool I = false;       // -I incremental generation in threshold-sized chunks
  int threshold = 0;    // --threshold chunk size, 0 = whole stage at once
  std::uint64_t seed = 1;
  std::optional<std::string> template_path;  // --template FILE
  std::optional<Instance> template_instance;

  /// Throws GenError(ConfigInvalid) on inconsistent counts.
  void validate() const;
  /// `gen ...` command line that regenerates a single instance with `file_seed`.
  std::string invocation(std::uint64_t file_seed) const;
};

class GenError : public std::runtime_error {
 public:
  enum class Kind { ConfigInvalid, CapacityExceeded, TemplateInvalid, Infeasible, Io };
  GenError(Kind kind, std::string stage, std::string detail);
  Kind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

 private:
  Kind kind_;
  std::string stage_;
};

/// A layout is an instance without shelves, stock and orders, together with
/// the squares eligible for shelf placement.
struct Layout {
  Instance partial;
  std::vector<Position> storage;
};

/// Grid, highways, stations and robots for cfg; randomized parts use cfg.seed.
Layout layout(const GenConfig& cfg);

/// Chunk sizes used for a stage of `total` objects: {total} when splitting is
/// off, otherwise threshold-sized chunks with the remainder last.
std::vector<int> split_rounds(int total, int threshold);

struct PopulateTrace {
  std::map<std::string, std::vector<int>> rounds;  // stage -> chunk sizes
};

/// Places shelves, products, units and orders using streams derived from cfg.seed.
Instance populate(const Layout& layout, const GenConfig& cfg, PopulateTrace* trace = nullptr);

struct NameFields {
  int x = 0, y = 0, nodes = 0, r = 0, s = 0, p = 0, P = 0, u = 0, o = 0;
  static NameFields of(const Instance& inst);
};

/// x{x}_y{y}_n{nodes}_r{r}_s{s}_ps{p}_pr{P}_u{u}_o{o}_N{index:03}.lp
std::string instance_name(const NameFields& f, int index);

/// Seed of the index-th file (1-based) of a run seeded with `seed`.
std::uint64_t file_seed(std::uint64_t seed, int index);

struct GeneratedInstance {
  Instance instance;
  std::uint64_t seed = 0;
  std::string name;
  std::vector<std::string> header;
  std::string text;  // full file content
};

/// The index-th instance (1-based) of `cfg`.
GeneratedInstance generate(const GenConfig& cfg, int index);

/// Flag-keyed partial configuration, e.g. {"r": "2", "H": "true"}.
using GenOverrides = std::map<std::string, std::string>;

void apply_overrides(GenConfig& cfg, const GenOverrides& overrides);

struct BatchConfig {
  GenOverrides preset;
  std::vector<std::pair<std::string, GenOverrides>> variants;
  std::string output_dir = ".";

  static BatchConfig from_yaml(const std::string& text);
};

struct ManifestEntry {
  std::string variant;
  std::string path;
  std::uint64_t seed = 0;
};

std::vector<ManifestEntry> run_batch(const BatchConfig& batch);

}  // namespace logibench
