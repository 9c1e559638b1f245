#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace airmia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

// Subcommands: gen, train, attack, run, run-all, report. `args` excludes the
// program name. Returns the process exit status (0 ok, 1 runtime failure,
// 2 usage or config error).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace airmia::cli
