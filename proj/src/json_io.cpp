#include "logibench/json_io.hpp"

#include "logibench/checker.hpp"
#include "logibench/facts_io.hpp"

namespace logibench {

namespace {

Json pos(const Position& p) { return Json::array({p.x, p.y}); }

Position pos_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("position must be [x, y], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

Json to_json(const Instance& inst) {
  Json doc;
  doc["width"] = inst.width;
  doc["height"] = inst.height;
  doc["nodes"] = Json::array();
  for (const auto& p : inst.nodes) doc["nodes"].push_back(pos(p));
  doc["highways"] = Json::array();
  for (const auto& p : inst.highways) doc["highways"].push_back(pos(p));
  doc["stations"] = Json::array();
  for (const auto& [id, at] : inst.stations) doc["stations"].push_back({{"id", id}, {"at", pos(at)}});
  doc["shelves"] = Json::array();
  for (const auto& [id, at] : inst.shelves) doc["shelves"].push_back({{"id", id}, {"at", pos(at)}});
  doc["robots"] = Json::array();
  for (const auto& [id, r] : inst.robots) {
    doc["robots"].push_back({{"id", id}, {"at", pos(r.at)}, {"carries", r.carries ? Json(*r.carries) : Json(nullptr)}});
  }
  doc["stock"] = Json::array();
  for (const auto& [key, units] : inst.stock) {
    doc["stock"].push_back({{"product", key.first}, {"shelf", key.second}, {"units", units}});
  }
  doc["orders"] = Json::array();
  for (const auto& [id, order] : inst.orders) {
    Json lines = Json::array();
    for (const auto& [product, units] : order.lines) lines.push_back({{"product", product}, {"units", units}});
    doc["orders"].push_back({{"id", id}, {"station", order.station}, {"lines", lines}});
  }
  return doc;
}

Instance instance_from_json(const Json& doc) {
  Instance inst;
  inst.width = doc.value("width", 0);
  inst.height = doc.value("height", 0);
  for (const auto& p : doc.value("nodes", Json::array())) inst.nodes.insert(pos_from(p));
  for (const auto& p : doc.value("highways", Json::array())) inst.highways.insert(pos_from(p));
  for (const auto& s : doc.value("stations", Json::array())) inst.stations[s.at("id").get<int>()] = pos_from(s.at("at"));
  for (const auto& s : doc.value("shelves", Json::array())) inst.shelves[s.at("id").get<int>()] = pos_from(s.at("at"));
  for (const auto& r : doc.value("robots", Json::array())) {
    RobotPlacement rp{pos_from(r.at("at")), std::nullopt};
    if (r.contains("carries") && !r["carries"].is_null()) rp.carries = r["carries"].get<int>();
    inst.robots[r.at("id").get<int>()] = rp;
  }
  for (const auto& s : doc.value("stock", Json::array())) {
    inst.stock[{s.at("product").get<int>(), s.at("shelf").get<int>()}] = s.at("units").get<int>();
  }
  for (const auto& o : doc.value("orders", Json::array())) {
    Order order;
    order.station = o.at("station").get<int>();
    for (const auto& l : o.value("lines", Json::array())) order.lines[l.at("product").get<int>()] = l.at("units").get<int>();
    inst.orders[o.at("id").get<int>()] = order;
  }
  for (const auto& p : inst.nodes) {
    inst.width = std::max(inst.width, p.x);
    inst.height = std::max(inst.height, p.y);
  }
  validate(inst);
  return inst;
}

Json to_json(const Plan& plan) {
  Json doc;
  doc["horizon"] = plan.horizon;
  Json robots = Json::object();
  for (const auto& [robot, timeline] : plan.actions) {
    Json steps = Json::array();
    for (const auto& a : timeline) steps.push_back(a.str());
    robots[std::to_string(robot)] = steps;
  }
  doc["actions"] = robots;
  return doc;
}

Json to_json(const State& s) {
  Json doc;
  doc["step"] = s.step;
  doc["robots"] = Json::array();
  for (const auto& [id, at] : s.robot_pos) {
    const auto carried = s.carries.at(id);
    doc["robots"].push_back({{"id", id}, {"at", pos(at)}, {"carries", carried ? Json(*carried) : Json(nullptr)}});
  }
  doc["shelves"] = Json::array();
  for (const auto& [id, at] : s.shelf_pos) doc["shelves"].push_back({{"id", id}, {"at", pos(at)}});
  doc["stock"] = Json::array();
  for (const auto& [key, units] : s.stock) doc["stock"].push_back({{"product", key.first}, {"shelf", key.second}, {"units", units}});
  doc["open_lines"] = Json::array();
  for (const auto& [key, units] : s.open_lines) {
    doc["open_lines"].push_back({{"order", key.first}, {"product", key.second}, {"remaining", units}});
  }
  return doc;
}

Json to_json(const DiagnosticReport& report, bool with_trace) {
  Json doc;
  doc["valid"] = report.valid();
  doc["diagnostics"] = Json::array();
  for (const Diagnostic& d : report.diagnostics) {
    doc["diagnostics"].push_back({{"group", d.group},
                                  {"constraint", d.constraint},
                                  {"params", d.params.str()},
                                  {"fact", format_fact(ErrFact{d.group, d.constraint, d.params})},
                                  {"message", explain(d)}});
  }
  if (with_trace) {
    doc["trace"] = Json::array();
    for (const auto& s : report.trace) doc["trace"].push_back(to_json(s));
  }
  return doc;
}

Json to_json(const SolveStats& stats) {
  return {{"expanded", stats.expanded},
          {"generated", stats.generated},
          {"lower_bound", stats.lower_bound},
          {"horizons_tried", stats.horizons_tried}};
}

Json to_json(const Assignment& a) {
  Json doc = Json::array();
  for (const auto& [order, t] : a.tasks) {
    doc.push_back({{"order", order}, {"robot", t.robot}, {"shelf", t.shelf}, {"station", t.station}});
  }
  return doc;
}

GenOverrides overrides_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("generator config must be a JSON object");
  GenOverrides out;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      out[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer()) {
      out[key] = std::to_string(value.get<long long>());
    } else {
      throw std::invalid_argument("unsupported value for " + key + ": " + value.dump());
    }
  }
  return out;
}

}  // namespace logibench
