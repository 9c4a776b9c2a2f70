#ifndef VIDSCHED_CLI_HPP
#define VIDSCHED_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vidsched {

/// Entry point behind the vidsched binary; takes argv without the program
/// name. Data goes to `out`, logs to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vidsched

#endif
