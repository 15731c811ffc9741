#ifndef SYNAD_TOOLS_CLI_H_
#define SYNAD_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace synad::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitTraining = 3;

// Runs one command line (args[0] is the program name). Results go to `out`;
// failures print a one-line JSON error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synad::cli

#endif  // SYNAD_TOOLS_CLI_H_
