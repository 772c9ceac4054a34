#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logibench/domain.hpp"
#include "logibench/report.hpp"

namespace logibench {

/// Constraint names per group; every Diagnostic produced by the checker
/// belongs to this table.
struct ConstraintCatalog {
  struct Entry {
    std::string group;
    std::string constraint;
    bool delivery_only;  // inactive in domain M
  };
  static const std::vector<Entry>& entries();
  static bool contains(const std::string& group, const std::string& constraint);
};

class UnknownConstraint : public std::runtime_error {
 public:
  UnknownConstraint(const std::string& group, const std::string& constraint)
      : std::runtime_error("unknown constraint " + group + "/" + constraint) {}
};

struct CheckOptions {
  bool keep_trace = true;
};

/// Replays `plan` from the initial state and collects every violation,
/// followed by the goal violations at the horizon.
DiagnosticReport check_plan(const Instance& inst, const Plan& plan, const DomainVariant& variant,
                            const CheckOptions& options = {});

/// One-line English rendering of a diagnostic.
std::string explain(const Diagnostic& d);

}  // namespace logibench
