#pragma once

#include <iosfwd>

namespace bhcone {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Parses flags, runs the selected experiments and writes reports.
/// Returns 0 when every check passes, 1 on any failure, 2 on config errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bhcone
