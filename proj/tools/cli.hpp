#pragma once

namespace oormlp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitVerification = 4;

// Entry point of the `oormlp` tool; returns the process exit code.
int run(int argc, char** argv);

}  // namespace oormlp::cli
