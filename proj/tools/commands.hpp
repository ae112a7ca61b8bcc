#pragma once

namespace polar::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;       // malformed input or flags
inline constexpr int kExitDegenerate = 3;  // linearly dependent system
inline constexpr int kExitNumerical = 4;   // certificate failed numerically
inline constexpr int kExitAnomaly = 5;     // explorer found v < 1 - 1e-4

// Full front end: parses argv, dispatches, maps errors to exit codes.
int run(int argc, char** argv);

}  // namespace polar::cli
