#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point for the `asd` tool: bucket | generate | upscale | bench | seammap.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from ASD_THREADS, or hardware concurrency when unset.
int thread_cap();

}  // namespace asd::cli
