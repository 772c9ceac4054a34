#pragma once

#include <vector>

#include "logibench/domain.hpp"

namespace logibench {

struct DiagnosticReport {
  std::vector<Diagnostic> diagnostics;
  std::vector<State> trace;  // states 0..horizon

  bool valid() const { return diagnostics.empty(); }
};

}  // namespace logibench
