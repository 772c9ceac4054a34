#pragma once

#include <iosfwd>

namespace logibench {

/// Entry point of the logibench command; returns the process exit status:
/// 0 success, 1 domain failure (unsat, diagnostics), 2 usage or parse error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace logibench
