#pragma once

#include <iosfwd>

namespace entlab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kNumericalError = 2;

/// Entry point for the `entlab` tool; writes to the given streams instead of
/// stdout/stderr so tests can capture output.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entlab::cli
