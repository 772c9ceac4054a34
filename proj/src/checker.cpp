#include "logibench/checker.hpp"

#include <algorithm>
#include <functional>

namespace logibench {

const std::vector<ConstraintCatalog::Entry>& ConstraintCatalog::entries() {
  static const std::vector<Entry> kEntries = {
      {"action", "moveOffGrid", false},
      {"action", "vertexConflict", false},
      {"action", "swapConflict", false},
      {"action", "shelfConflict", true},
      {"action", "pickupWhileCarrying", true},
      {"action", "pickupNoShelf", true},
      {"action", "putdownNotCarrying", true},
      {"action", "putdownOnHighway", true},
      {"action", "putdownOnStation", true},
      {"action", "deliverNotAtStation", true},
      {"action", "deliverNotCarrying", true},
      {"action", "deliverClosedLine", true},
      {"action", "deliverExceedsStock", true},
      {"action", "deliverExceedsRequest", true},
      {"action", "deliverZeroUnits", true},
      {"action", "deliverInDomainM", false},
      {"action", "pickupInDomainM", false},
      {"action", "putdownInDomainM", false},
      {"goal", "unfilledOrder", false},
      {"goal", "restOnHighway", false},
      {"goal", "shelfOnHighway", false},
  };
  return kEntries;
}

bool ConstraintCatalog::contains(const std::string& group, const std::string& constraint) {
  const auto& all = entries();
  return std::any_of(all.begin(), all.end(),
                     [&](const Entry& e) { return e.group == group && e.constraint == constraint; });
}

DiagnosticReport check_plan(const Instance& inst, const Plan& plan, const DomainVariant& variant,
                            const CheckOptions& options) {
  DiagnosticReport report;
  State state = initial_state(inst);
  if (options.keep_trace) report.trace.push_back(state);
  for (int t = 1; t <= plan.horizon; ++t) {
    StepResult r = step(state, plan.joint(t), inst, variant);
    report.diagnostics.insert(report.diagnostics.end(), r.violations.begin(), r.violations.end());
    state = std::move(r.state);
    if (options.keep_trace) report.trace.push_back(state);
  }
  auto goal = goal_violations(state, inst, variant);
  report.diagnostics.insert(report.diagnostics.end(), goal.begin(), goal.end());
  return report;
}

namespace {

std::string arg(const Term& params, std::size_t i) {
  if (!params.is_tuple() || i >= params.size()) throw std::invalid_argument("diagnostic parameters too short: " + params.str());
  return params.items()[i].str();
}

std::string units(const Term& params, std::size_t i) {
  const std::string n = arg(params, i);
  return n + (n == "1" ? " unit" : " units");
}

}  // namespace

std::string explain(const Diagnostic& d) {
  using Render = std::function<std::string(const Term&)>;
  static const std::map<std::string, Render> kTemplates = {
      {"moveOffGrid",
       [](const Term& p) { return "robot " + arg(p, 0) + " moves off the grid to " + arg(p, 1) + " at step " + arg(p, 2); }},
      {"vertexConflict",
       [](const Term& p) {
         return "robots " + arg(p, 0) + " and " + arg(p, 1) + " both occupy " + arg(p, 2) + " at step " + arg(p, 3);
       }},
      {"swapConflict",
       [](const Term& p) { return "robots " + arg(p, 0) + " and " + arg(p, 1) + " swap squares at step " + arg(p, 2); }},
      {"shelfConflict",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " carries shelf " + arg(p, 1) + " onto the square of shelf " + arg(p, 2) +
                " at step " + arg(p, 3);
       }},
      {"pickupWhileCarrying",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " picks up while already carrying shelf " + arg(p, 1) + " at step " + arg(p, 2);
       }},
      {"pickupNoShelf",
       [](const Term& p) { return "robot " + arg(p, 0) + " picks up where no shelf stands at step " + arg(p, 1); }},
      {"putdownNotCarrying",
       [](const Term& p) { return "robot " + arg(p, 0) + " puts down without carrying a shelf at step " + arg(p, 1); }},
      {"putdownOnHighway",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " put shelf " + arg(p, 1) + " down on a highway at step " + arg(p, 2);
       }},
      {"putdownOnStation",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " put shelf " + arg(p, 1) + " down on a picking station at step " + arg(p, 2);
       }},
      {"deliverNotAtStation",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " delivers for order " + arg(p, 1) + " away from its picking station at step " +
                arg(p, 2);
       }},
      {"deliverNotCarrying",
       [](const Term& p) { return "robot " + arg(p, 0) + " delivers without carrying a shelf at step " + arg(p, 1); }},
      {"deliverClosedLine",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " delivers product " + arg(p, 2) + " to order " + arg(p, 1) +
                " which has no open line for it at step " + arg(p, 3);
       }},
      {"deliverExceedsStock",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " delivers " + units(p, 3) + " of product " + arg(p, 2) + " but shelf " +
                arg(p, 1) + " holds fewer at step " + arg(p, 4);
       }},
      {"deliverExceedsRequest",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " delivers " + units(p, 3) + " of product " + arg(p, 2) + " exceeding what order " +
                arg(p, 1) + " still requests at step " + arg(p, 4);
       }},
      {"deliverZeroUnits",
       [](const Term& p) {
         return "robot " + arg(p, 0) + " delivers no units of product " + arg(p, 2) + " to order " + arg(p, 1) +
                " at step " + arg(p, 3);
       }},
      {"deliverInDomainM",
       [](const Term& p) { return "robot " + arg(p, 0) + " delivers although domain M only moves at step " + arg(p, 1); }},
      {"pickupInDomainM",
       [](const Term& p) { return "robot " + arg(p, 0) + " picks up although domain M only moves at step " + arg(p, 1); }},
      {"putdownInDomainM",
       [](const Term& p) { return "robot " + arg(p, 0) + " puts down although domain M only moves at step " + arg(p, 1); }},
      {"unfilledOrder",
       [](const Term& p) {
         return "order " + arg(p, 0) + " still requires " + units(p, 2) + " of product " + arg(p, 1) +
                " at final step " + arg(p, 3);
       }},
      {"restOnHighway",
       [](const Term& p) { return "robot " + arg(p, 0) + " rests on a highway at final step " + arg(p, 1); }},
      {"shelfOnHighway",
       [](const Term& p) { return "shelf " + arg(p, 0) + " stands on a highway at final step " + arg(p, 1); }},
  };
  if (!ConstraintCatalog::contains(d.group, d.constraint)) throw UnknownConstraint(d.group, d.constraint);
  return kTemplates.at(d.constraint)(d.params);
}

}  // namespace logibench
