#pragma once

namespace pathcalc::cli {

/// Parses argv and dispatches to the engine.  Returns the process exit
/// code: 0 on success, 2 when the requested check computed fine but the
/// mathematical verdict is negative, 1 on operational errors.
int run_cli(int argc, const char* const* argv);

}  // namespace pathcalc::cli
