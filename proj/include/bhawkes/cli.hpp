#pragma once

#include <iosfwd>

namespace bhawkes {

/// Entry point of the `bhawkes` tool. Returns the process exit code:
/// 0 on success, 1 on validation errors, 2 on runtime errors and failed
/// verification checks.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bhawkes
