#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logibench/domain.hpp"
#include "logibench/facts.hpp"
#include "logibench/instance.hpp"
#include "logibench/report.hpp"

namespace logibench {

class PlanError : public std::runtime_error {
 public:
  enum class Kind { DuplicateAction, UnknownRobot, BadAction, NotOccursFact };
  PlanError(Kind kind, std::string detail);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Admissible attributes per object type and the tuple arity of their value
/// (1 means a bare integer).
struct AttributeRegistry {
  std::map<std::string, std::map<std::string, int>> types;

  static const AttributeRegistry& standard();
  bool knows(const std::string& type) const { return types.count(type) != 0; }
};

/// Validated instance from init facts. Init facts of unregistered object
/// types and non-init extras are skipped; pass `skipped` to collect them.
Instance build_instance(const FactSet& facts, std::vector<std::string>* skipped = nullptr);

/// Plan from occurs facts; steps without an action are waits.
Plan build_plan(const FactSet& facts, const Instance& inst);

FactSet to_facts(const Instance& inst);
FactSet to_facts(const Plan& plan, Domain domain = Domain::A);
FactSet to_facts(const DiagnosticReport& report);

/// Canonical text. Deliver quantities are written as 0 for B and C.
std::string serialize(const Instance& inst, const std::vector<std::string>& header = {});
std::string serialize(const Plan& plan, Domain domain = Domain::A);
std::string serialize(const DiagnosticReport& report);

Term to_term(const Action& a);
Action action_from(const std::string& name, const Term& args);

/// Convenience: parse text and build.
Instance read_instance(std::string_view text);
Plan read_plan(std::string_view text, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace logibench
