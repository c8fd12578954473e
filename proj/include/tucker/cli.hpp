#pragma once

#include <iosfwd>

namespace tucker {

/// Entry point of the `tucker` tool. Results go to `out`; usage text and
/// JSON failure reports go to `err`. Returns the process exit status:
/// 0 on success, 1 on a failed check or runtime error, 2 on bad usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tucker
