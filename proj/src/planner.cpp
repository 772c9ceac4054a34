#include "logibench/planner.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "logibench/grid.hpp"

namespace logibench {

const char* to_string(PositionEncoding e) { return e == PositionEncoding::Paired ? "paired" : "split"; }

std::optional<PositionEncoding> parse_position_encoding(std::string_view text) {
  if (text == "paired") return PositionEncoding::Paired;
  if (text == "split") return PositionEncoding::Split;
  return std::nullopt;
}

const char* to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Plan: return "plan";
    case SolveResult::Status::Unsat: return "unsat";
    case SolveResult::Status::Unknown: return "unknown";
  }
  return "?";
}

namespace {

using Cell = std::int16_t;
constexpr int kInf = GridGraph::kUnreachable;
constexpr int kAny = -2;

struct Line {
  OrderId order = 0;
  ProductId product = 0;
  int station = 0;  // station index
  int requested = 0;
};

// Everything about an instance that stays fixed during search, in dense
// index form.
struct Model {
  const Instance& inst;
  DomainVariant variant;
  GridGraph graph;
  int N = 0, R = 0, S = 0, L = 0, K = 0;
  std::vector<RobotId> robot_ids;
  std::vector<ShelfId> shelf_ids;
  std::vector<int> station_node;
  std::vector<Line> lines;
  std::vector<std::vector<int>> line_shelves;  // shelves initially stocking the line's product
  std::vector<char> has_stock;                 // [line * S + shelf]
  std::vector<int> stock_slot;                 // [line * S + shelf], A only
  std::vector<Cell> stock_init;
  std::vector<int> dist;
  std::vector<char> highway, station_here;
  std::vector<int> to_free;

  bool assigned = false;
  std::vector<char> may_pickup;     // [robot * S + shelf]
  std::vector<int> deliver_shelf;   // [robot * L + line]: shelf, -1 or kAny
  std::vector<int> line_robot, line_shelf;
  std::vector<std::pair<int, int>> task_goals;  // M_a: (robot, shelf)

  // State layout: positions (encoding-specific width), carries, lines, stock.
  int pos_cells = 0, carry_off = 0, line_off = 0, stock_off = 0, width = 0;

  Model(const Instance& in, const DomainVariant& v, const Assignment* a, int cells_per_position)
      : inst(in), variant(v), graph(in) {
    N = graph.size();
    for (const auto& [id, r] : inst.robots) robot_ids.push_back(id);
    for (const auto& [id, s] : inst.shelves) shelf_ids.push_back(id);
    R = static_cast<int>(robot_ids.size());
    S = static_cast<int>(shelf_ids.size());
    std::map<StationId, int> station_index;
    for (const auto& [id, at] : inst.stations) {
      station_index[id] = static_cast<int>(station_node.size());
      station_node.push_back(graph.index(at));
    }
    for (const auto& [oid, order] : inst.orders) {
      for (const auto& [product, units] : order.lines) lines.push_back({oid, product, station_index.at(order.station), units});
    }
    L = static_cast<int>(lines.size());

    has_stock.assign(static_cast<std::size_t>(L * S), 0);
    stock_slot.assign(static_cast<std::size_t>(L * S), -1);
    line_shelves.resize(static_cast<std::size_t>(L));
    std::map<std::pair<ProductId, int>, int> slots;
    for (int l = 0; l < L; ++l) {
      for (int s = 0; s < S; ++s) {
        auto it = inst.stock.find({lines[l].product, shelf_ids[s]});
        if (it == inst.stock.end() || it->second < 1) continue;
        has_stock[l * S + s] = 1;
        line_shelves[l].push_back(s);
        if (variant.base == Domain::A) {
          auto [slot, fresh] = slots.emplace(std::pair{lines[l].product, s}, static_cast<int>(stock_init.size()));
          if (fresh) stock_init.push_back(static_cast<Cell>(std::min(it->second, 32767)));
          stock_slot[l * S + s] = slot->second;
        }
      }
    }
    K = static_cast<int>(stock_init.size());

    dist.assign(static_cast<std::size_t>(N) * N, kInf);
    for (int u = 0; u < N; ++u) {
      const auto row = graph.distances_from(u);
      std::copy(row.begin(), row.end(), dist.begin() + static_cast<std::ptrdiff_t>(u) * N);
    }
    highway.assign(static_cast<std::size_t>(N), 0);
    station_here.assign(static_cast<std::size_t>(N), 0);
    for (int u = 0; u < N; ++u) {
      highway[u] = inst.is_highway(graph.position(u)) ? 1 : 0;
      station_here[u] = inst.is_station(graph.position(u)) ? 1 : 0;
    }
    to_free.assign(static_cast<std::size_t>(N), kInf);
    for (int u = 0; u < N; ++u) {
      for (int v = 0; v < N; ++v) {
        if (!highway[v]) to_free[u] = std::min(to_free[u], d(u, v));
      }
    }

    assigned = a != nullptr && !a->empty();
    may_pickup.assign(static_cast<std::size_t>(R * S), assigned ? 0 : 1);
    deliver_shelf.assign(static_cast<std::size_t>(R * L), assigned ? -1 : kAny);
    line_robot.assign(static_cast<std::size_t>(L), -1);
    line_shelf.assign(static_cast<std::size_t>(L), -1);
    if (assigned) {
      std::map<RobotId, int> ri;
      std::map<ShelfId, int> si;
      for (int r = 0; r < R; ++r) ri[robot_ids[r]] = r;
      for (int s = 0; s < S; ++s) si[shelf_ids[s]] = s;
      for (const auto& [oid, task] : a->tasks) {
        const int r = ri.at(task.robot);
        const int s = si.at(task.shelf);
        may_pickup[r * S + s] = 1;
        task_goals.emplace_back(r, s);
        for (int l = 0; l < L; ++l) {
          if (lines[l].order != oid) continue;
          deliver_shelf[r * L + l] = s;
          line_robot[l] = r;
          line_shelf[l] = s;
        }
      }
    }

    pos_cells = (R + S) * cells_per_position;
    carry_off = pos_cells;
    line_off = carry_off + R;
    stock_off = line_off + L;
    width = stock_off + K;
  }

  int d(int a, int b) const { return dist[static_cast<std::size_t>(a) * N + b]; }
  bool delivers() const { return variant.base != Domain::M; }
};

// One node index per robot/shelf.
struct PairedPositions {
  static constexpr int kCells = 1;
  static int get(const Cell* s, int slot, const Model&) { return s[slot]; }
  static void put(Cell* s, int slot, int node, const Model&) { s[slot] = static_cast<Cell>(node); }
  static int target(const Cell* s, int slot, int dir, const Model& m) { return m.graph.neighbour(s[slot], dir); }
};

// Separate x and y cells per robot/shelf; moves change one axis.
struct SplitPositions {
  static constexpr int kCells = 2;
  static int count(const Model& m) { return m.R + m.S; }
  static int get(const Cell* s, int slot, const Model& m) { return m.graph.index(s[slot], s[count(m) + slot]); }
  static void put(Cell* s, int slot, int node, const Model& m) {
    const Position& p = m.graph.position(node);
    s[slot] = static_cast<Cell>(p.x);
    s[count(m) + slot] = static_cast<Cell>(p.y);
  }
  static int target(const Cell* s, int slot, int dir, const Model& m) {
    const Position& d = kDirections[dir];
    return m.graph.index(s[slot] + d.x, s[count(m) + slot] + d.y);
  }
};

struct LocalAction {
  Action::Kind kind = Action::Kind::Wait;
  int dir = 0;
  int target = 0;  // node after the step
  int line = 0;
  int units = 0;
};

enum class Outcome { Found, Exhausted, Limit };

struct Limits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::stop_token stop;
  std::size_t node_cap = 0;
};

template <class Enc>
class Search {
 public:
  Search(const Model& m, Limits limits, SolveStats& stats) : m_(m), limits_(std::move(limits)), stats_(stats) {
    grounded_.assign(static_cast<std::size_t>(m.N), -1);
    rn_.resize(static_cast<std::size_t>(m.R));
    carry_.resize(static_cast<std::size_t>(m.R));
    sn_.resize(static_cast<std::size_t>(m.S));
    carried_.assign(static_cast<std::size_t>(m.S), 0);
    acts_.resize(static_cast<std::size_t>(m.R));
    chosen_.resize(static_cast<std::size_t>(m.R));
    child_.resize(static_cast<std::size_t>(m.width));
  }

  std::vector<Cell> initial_state() const {
    std::vector<Cell> s(static_cast<std::size_t>(m_.width), 0);
    std::map<ShelfId, int> si;
    for (int j = 0; j < m_.S; ++j) {
      si[m_.shelf_ids[j]] = j;
      Enc::put(s.data(), m_.R + j, m_.graph.index(m_.inst.shelves.at(m_.shelf_ids[j])), m_);
    }
    for (int i = 0; i < m_.R; ++i) {
      const auto& robot = m_.inst.robots.at(m_.robot_ids[i]);
      Enc::put(s.data(), i, m_.graph.index(robot.at), m_);
      s[m_.carry_off + i] = static_cast<Cell>(robot.carries ? si.at(*robot.carries) + 1 : 0);
    }
    for (int l = 0; l < m_.L; ++l) s[m_.line_off + l] = static_cast<Cell>(std::min(m_.lines[l].requested, 32767));
    std::copy(m_.stock_init.begin(), m_.stock_init.end(), s.begin() + m_.stock_off);
    return s;
  }

  bool is_goal(const Cell* s) {
    decode(s);
    if (m_.delivers()) {
      for (int l = 0; l < m_.L; ++l) {
        if (s[m_.line_off + l] > 0) return false;
      }
    } else {
      for (int l = 0; l < m_.L; ++l) {
        bool processed = false;
        for (int j : m_.line_shelves[l]) {
          for (int i = 0; i < m_.R && !processed; ++i) processed = rn_[i] == sn_[j];
        }
        if (!processed) return false;
      }
      for (const auto& [i, j] : m_.task_goals) {
        if (rn_[i] != sn_[j]) return false;
      }
    }
    for (int i = 0; i < m_.R; ++i) {
      if (m_.highway[rn_[i]]) return false;
    }
    for (int j = 0; j < m_.S; ++j) {
      if (!carried_[j] && m_.highway[sn_[j]]) return false;
    }
    return true;
  }

  int heuristic(const Cell* s) {
    decode(s);
    int h = 0;
    for (int i = 0; i < m_.R; ++i) h = std::max(h, m_.to_free[rn_[i]]);
    if (!m_.delivers()) {
      if (!m_.task_goals.empty()) {
        for (const auto& [i, j] : m_.task_goals) h = std::max(h, m_.d(rn_[i], sn_[j]));
      }
      for (int l = 0; l < m_.L; ++l) {
        int best = kInf;
        for (int j : m_.line_shelves[l]) {
          for (int i = 0; i < m_.R; ++i) best = std::min(best, m_.d(rn_[i], sn_[j]));
        }
        h = std::max(h, best);
      }
      return std::min(h, kInf);
    }
    const bool restricted = m_.assigned && m_.variant.base != Domain::C;
    const bool serialize = m_.variant.base != Domain::C;
    if (serialize) {
      release_.assign(m_.station_node.size(), {});
    }
    for (int l = 0; l < m_.L; ++l) {
      if (s[m_.line_off + l] <= 0) continue;
      const int st = m_.station_node[m_.lines[l].station];
      int best = kInf;
      for (int j : m_.line_shelves[l]) {
        if (restricted && j != m_.line_shelf[l]) continue;
        if (m_.variant.base == Domain::A && s[m_.stock_off + m_.stock_slot[l * m_.S + j]] <= 0) continue;
        int cost;
        if (carried_[j]) {
          cost = m_.d(sn_[j], st) + 1;
        } else {
          int reach = kInf;
          for (int i = 0; i < m_.R; ++i) {
            if (restricted ? i != m_.line_robot[l] : !m_.may_pickup[i * m_.S + j]) continue;
            reach = std::min(reach, (carry_[i] >= 0 ? 1 : 0) + m_.d(rn_[i], sn_[j]));
          }
          cost = reach >= kInf ? kInf : reach + 1 + m_.d(sn_[j], st) + 1;
        }
        best = std::min(best, cost);
      }
      if (best >= kInf) return kInf;
      h = std::max(h, best);
      if (serialize) release_[m_.lines[l].station].push_back(best);
    }
    if (serialize) {
      // One delivery per station and step: unit jobs with release times.
      for (auto& costs : release_) {
        std::sort(costs.begin(), costs.end());
        int t = 0;
        for (int c : costs) t = std::max(t + 1, c);
        h = std::max(h, t);
      }
    }
    return std::min(h, kInf);
  }

  // Calls emit(chosen actions, child state) for every conflict-free joint
  // action, in a fixed order; stops when emit returns false.
  template <class F>
  void successors(const Cell* s, F&& emit) {
    decode(s);
    for (int j = 0; j < m_.S; ++j) {
      if (!carried_[j]) grounded_[sn_[j]] = j;
    }
    for (int i = 0; i < m_.R; ++i) {
      auto& list = acts_[i];
      list.clear();
      const int here = rn_[i];
      const int c = carry_[i];
      list.push_back({Action::Kind::Wait, 0, here, 0, 0});
      for (int dir = 0; dir < 4; ++dir) {
        const int t = Enc::target(s, i, dir, m_);
        if (t == GridGraph::kNone) continue;
        if (c >= 0 && grounded_[t] >= 0) continue;
        list.push_back({Action::Kind::Move, dir, t, 0, 0});
      }
      if (!m_.delivers()) continue;
      if (c < 0 && grounded_[here] >= 0 && m_.may_pickup[i * m_.S + grounded_[here]]) {
        list.push_back({Action::Kind::Pickup, 0, here, 0, 0});
      }
      if (c >= 0 && !m_.highway[here] && !m_.station_here[here]) list.push_back({Action::Kind::Putdown, 0, here, 0, 0});
      if (c < 0 || !m_.station_here[here]) continue;
      for (int l = 0; l < m_.L; ++l) {
        const int remaining = s[m_.line_off + l];
        if (remaining <= 0 || m_.station_node[m_.lines[l].station] != here) continue;
        const int allowed = m_.deliver_shelf[i * m_.L + l];
        if (allowed != kAny && allowed != c) continue;
        if (!m_.has_stock[l * m_.S + c]) continue;
        if (m_.variant.base == Domain::A) {
          const int available = s[m_.stock_off + m_.stock_slot[l * m_.S + c]];
          for (int n = 1; n <= std::min(available, remaining); ++n) list.push_back({Action::Kind::Deliver, 0, here, l, n});
        } else {
          list.push_back({Action::Kind::Deliver, 0, here, l, 0});
        }
      }
    }
    for (int j = 0; j < m_.S; ++j) grounded_[sn_[j]] = -1;
    // Snapshot what apply() needs, since emit may re-enter decode().
    std::vector<int> pos(rn_), car(carry_), spos(sn_);
    std::vector<int> ground_at(static_cast<std::size_t>(m_.R), -1);
    for (int i = 0; i < m_.R; ++i) {
      for (int j = 0; j < m_.S; ++j) {
        if (!carried_[j] && sn_[j] == pos[i]) ground_at[i] = j;
      }
    }
    bool go = true;
    enumerate(0, s, pos, car, ground_at, go, emit);
  }

  std::vector<LocalAction> chosen_;

 private:
  void decode(const Cell* s) {
    std::fill(carried_.begin(), carried_.end(), 0);
    for (int i = 0; i < m_.R; ++i) {
      rn_[i] = Enc::get(s, i, m_);
      carry_[i] = s[m_.carry_off + i] - 1;
      if (carry_[i] >= 0) carried_[carry_[i]] = 1;
    }
    for (int j = 0; j < m_.S; ++j) sn_[j] = Enc::get(s, m_.R + j, m_);
  }

  template <class F>
  void enumerate(int i, const Cell* s, const std::vector<int>& pos, const std::vector<int>& car,
                 const std::vector<int>& ground_at, bool& go, F& emit) {
    if (i == m_.R) {
      std::copy(s, s + m_.width, child_.begin());
      Cell* c = child_.data();
      for (int k = 0; k < m_.R; ++k) {
        const LocalAction& a = chosen_[k];
        switch (a.kind) {
          case Action::Kind::Move:
            Enc::put(c, k, a.target, m_);
            if (car[k] >= 0) Enc::put(c, m_.R + car[k], a.target, m_);
            break;
          case Action::Kind::Pickup:
            c[m_.carry_off + k] = static_cast<Cell>(ground_at[k] + 1);
            break;
          case Action::Kind::Putdown:
            c[m_.carry_off + k] = 0;
            break;
          case Action::Kind::Deliver:
            if (m_.variant.base == Domain::A) {
              c[m_.stock_off + m_.stock_slot[a.line * m_.S + car[k]]] -= static_cast<Cell>(a.units);
              c[m_.line_off + a.line] -= static_cast<Cell>(a.units);
            } else if (m_.variant.base == Domain::B) {
              c[m_.line_off + a.line] = 0;
            } else {
              const int station = m_.lines[a.line].station;
              for (int l = 0; l < m_.L; ++l) {
                if (m_.lines[l].station == station && c[m_.line_off + l] > 0 && m_.has_stock[l * m_.S + car[k]]) {
                  c[m_.line_off + l] = 0;
                }
              }
            }
            break;
          case Action::Kind::Wait:
            break;
        }
      }
      go = emit(chosen_, static_cast<const Cell*>(c));
      return;
    }
    for (const LocalAction& a : acts_[i]) {
      bool clash = false;
      for (int k = 0; k < i && !clash; ++k) {
        const int tk = chosen_[k].target;
        clash = tk == a.target || (tk == pos[i] && a.target == pos[k]);
      }
      if (clash) continue;
      chosen_[i] = a;
      enumerate(i + 1, s, pos, car, ground_at, go, emit);
      if (!go) return;
    }
  }

  const Model& m_;
  Limits limits_;
  SolveStats& stats_;
  std::vector<int> grounded_, rn_, carry_, sn_;
  std::vector<char> carried_;
  std::vector<std::vector<LocalAction>> acts_;
  std::vector<Cell> child_;
  std::vector<std::vector<int>> release_;

 public:
  // Bounded best-first search. On Found, `path` holds the states from the
  // initial one to a goal; on Exhausted, `next_bound` is the smallest f value
  // cut off by the bound (kInf if none was).
  Outcome run(int bound, std::vector<std::vector<Cell>>& path, int& next_bound, std::string& reason,
              bool exhaustive = false) {
    reset();
    next_bound = kInf;
    const std::vector<Cell> init = initial_state();
    const int h0 = heuristic(init.data());
    if (h0 >= kInf) return Outcome::Exhausted;
    if (h0 > bound) {
      next_bound = h0;
      return Outcome::Exhausted;
    }
    insert(init.data());
    recs_[0] = {kNoParent, 0};
    if (!exhaustive && is_goal(init.data())) {
      path = {init};
      return Outcome::Found;
    }
    std::uint64_t seq = 0;
    open_.push({h0, h0, seq++, 0, 0});
    std::vector<Cell> parent(static_cast<std::size_t>(m_.width));
    std::uint32_t found = kNoParent;
    bool limit = false;
    while (!open_.empty() && found == kNoParent && !limit) {
      const Entry e = open_.top();
      open_.pop();
      if (recs_[e.node].g != e.g) continue;
      if ((++stats_.expanded & 255) == 0) {
        if (limits_.stop.stop_requested()) {
          reason = "cancelled";
          return Outcome::Limit;
        }
        if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline) {
          reason = "time budget exhausted";
          return Outcome::Limit;
        }
      }
      std::copy_n(state(e.node), m_.width, parent.begin());
      const int g = e.g + 1;
      successors(parent.data(), [&](const std::vector<LocalAction>&, const Cell* child) {
        ++stats_.generated;
        const int h = heuristic(child);
        if (h >= kInf) return true;
        if (g + h > bound) {
          next_bound = std::min(next_bound, g + h);
          return true;
        }
        auto [node, fresh] = insert(child);
        if (!fresh && recs_[node].g <= g) return true;
        recs_[node] = {e.node, static_cast<Cell>(g)};
        if (!exhaustive && is_goal(child)) {
          found = node;
          return false;
        }
        if (recs_.size() > limits_.node_cap) {
          limit = true;
          return false;
        }
        open_.push({g + h, h, seq++, node, static_cast<Cell>(g)});
        return true;
      });
    }
    if (found != kNoParent) {
      path.clear();
      for (std::uint32_t n = found; n != kNoParent; n = recs_[n].parent) {
        path.emplace_back(state(n), state(n) + m_.width);
      }
      std::reverse(path.begin(), path.end());
      return Outcome::Found;
    }
    if (limit) {
      reason = "node cap of " + std::to_string(limits_.node_cap) + " states reached at horizon " + std::to_string(bound);
      return Outcome::Limit;
    }
    return Outcome::Exhausted;
  }

  std::size_t stored() const { return recs_.size(); }

 private:
  static constexpr std::uint32_t kNoParent = 0xffffffffu;
  struct Rec {
    std::uint32_t parent;
    Cell g;
  };
  struct Entry {
    int f;
    int h;
    std::uint64_t seq;
    std::uint32_t node;
    Cell g;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return seq > o.seq;
    }
  };

  const Cell* state(std::uint32_t n) const { return arena_.data() + static_cast<std::size_t>(n) * m_.width; }

  std::uint64_t hash(const Cell* s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < m_.width; ++i) {
      h ^= static_cast<std::uint16_t>(s[i]);
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 32;
    }
    return h;
  }

  void reset() {
    arena_.clear();
    recs_.clear();
    slots_.assign(1024, 0);
    open_ = {};
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, 0);
    old.swap(slots_);
    const std::size_t mask = slots_.size() - 1;
    for (std::uint32_t v : old) {
      if (v == 0) continue;
      std::size_t at = hash(state(v - 1)) & mask;
      while (slots_[at] != 0) at = (at + 1) & mask;
      slots_[at] = v;
    }
  }

  std::pair<std::uint32_t, bool> insert(const Cell* s) {
    if ((recs_.size() + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t at = hash(s) & mask;
    while (slots_[at] != 0) {
      const std::uint32_t n = slots_[at] - 1;
      if (std::equal(s, s + m_.width, state(n))) return {n, false};
      at = (at + 1) & mask;
    }
    const auto n = static_cast<std::uint32_t>(recs_.size());
    arena_.insert(arena_.end(), s, s + m_.width);
    recs_.push_back({kNoParent, 0});
    slots_[at] = n + 1;
    return {n, true};
  }

  std::vector<Cell> arena_;
  std::vector<Rec> recs_;
  std::vector<std::uint32_t> slots_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open_;
};

Action to_action(const Model& m, const LocalAction& a) {
  switch (a.kind) {
    case Action::Kind::Move: return Action::move(kDirections[a.dir].x, kDirections[a.dir].y);
    case Action::Kind::Pickup: return Action::pickup();
    case Action::Kind::Putdown: return Action::putdown();
    case Action::Kind::Deliver: {
      const Line& line = m.lines[static_cast<std::size_t>(a.line)];
      return Action::deliver(line.order, line.product, m.variant.base == Domain::A ? a.units : 0);
    }
    case Action::Kind::Wait: break;
  }
  return Action::wait();
}

template <class Enc>
Plan rebuild_plan(const Model& m, Search<Enc>& search, const std::vector<std::vector<Cell>>& path) {
  Plan plan;
  for (RobotId r : m.robot_ids) plan.actions[r];
  for (std::size_t t = 1; t < path.size(); ++t) {
    search.successors(path[t - 1].data(), [&](const std::vector<LocalAction>& joint, const Cell* child) {
      if (!std::equal(child, child + m.width, path[t].data())) return true;
      for (int i = 0; i < m.R; ++i) plan.actions[m.robot_ids[i]].push_back(to_action(m, joint[i]));
      return false;
    });
  }
  plan.horizon = static_cast<int>(path.size()) - 1;
  return plan;
}

Limits limits_from(const SolveOptions& opt) {
  Limits l;
  if (opt.budget) l.deadline = std::chrono::steady_clock::now() + *opt.budget;
  l.stop = opt.stop;
  l.node_cap = opt.node_cap;
  return l;
}

template <class Enc>
SolveResult solve_impl(const Instance& inst, const DomainVariant& variant, const Assignment* assignment, int min_h,
                       int max_h, bool exact, const SolveOptions& opt) {
  SolveResult res;
  const Model m(inst, variant, assignment, Enc::kCells);
  Search<Enc> search(m, limits_from(opt), res.stats);
  const auto init = search.initial_state();
  const int lb = search.heuristic(init.data());
  res.stats.lower_bound = lb >= kInf ? -1 : lb;
  int bound = exact ? max_h : std::max(min_h, lb);
  if (lb >= kInf || lb > max_h) {
    res.status = SolveResult::Status::Unsat;
    res.horizon = max_h;
    return res;
  }
  while (bound <= max_h) {
    res.stats.horizons_tried.push_back(bound);
    std::vector<std::vector<Cell>> path;
    int next = kInf;
    std::string reason;
    const Outcome out = search.run(bound, path, next, reason);
    if (out == Outcome::Found) {
      res.status = SolveResult::Status::Plan;
      res.plan = rebuild_plan(m, search, path);
      if (exact) res.plan.pad_to(max_h);

      res.horizon = res.plan.horizon;
      return res;
    }
    if (out == Outcome::Limit) {
      res.status = SolveResult::Status::Unknown;
      res.reason = reason;
      return res;
    }
    if (exact || next >= kInf) break;
    bound = next;
  }
  res.status = SolveResult::Status::Unsat;
  res.horizon = max_h;
  return res;
}

SolveResult dispatch(const Instance& inst, const DomainVariant& variant, const Assignment* assignment, int min_h,
                     int max_h, bool exact, const SolveOptions& opt) {
  if (max_h < 0) throw std::invalid_argument("horizon must be non-negative");
  if (assignment != nullptr && !assignment->empty()) apply_assignment(inst, *assignment, variant.m_restricted);
  if (opt.positions == PositionEncoding::Split) {
    return solve_impl<SplitPositions>(inst, variant, assignment, min_h, max_h, exact, opt);
  }
  return solve_impl<PairedPositions>(inst, variant, assignment, min_h, max_h, exact, opt);
}

}  // namespace

int lower_bound(const Instance& inst, const DomainVariant& variant, const Assignment* assignment) {
  const Model m(inst, variant, assignment, PairedPositions::kCells);
  SolveStats stats;
  Search<PairedPositions> search(m, {}, stats);
  const auto init = search.initial_state();
  const int h = search.heuristic(init.data());
  return h >= kInf ? -1 : h;
}

std::optional<std::uint64_t> count_bounded_states(const Instance& inst, int horizon, const DomainVariant& variant,
                                                  const Assignment* assignment, const SolveOptions& opt) {
  if (assignment != nullptr && !assignment->empty()) apply_assignment(inst, *assignment, variant.m_restricted);
  const Model m(inst, variant, assignment, PairedPositions::kCells);
  SolveStats stats;
  Search<PairedPositions> search(m, limits_from(opt), stats);
  std::vector<std::vector<Cell>> ignored;
  int next = 0;
  std::string reason;
  if (search.run(horizon, ignored, next, reason, true) != Outcome::Exhausted) return std::nullopt;
  return search.stored();
}

SolveResult solve_bounded(const Instance& inst, int horizon, const DomainVariant& variant,
                          const Assignment* assignment, const SolveOptions& opt) {
  return dispatch(inst, variant, assignment, 0, horizon, true, opt);
}

SolveResult solve_min_makespan(const Instance& inst, const DomainVariant& variant, int max_horizon,
                               const Assignment* assignment, const SolveOptions& opt) {
  return dispatch(inst, variant, assignment, 0, max_horizon, false, opt);
}

}  // namespace logibench
