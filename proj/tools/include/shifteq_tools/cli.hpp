#ifndef SHIFTEQ_TOOLS_CLI_HPP
#define SHIFTEQ_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace shifteq::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInputError = 2;

/// Runs one `shifteq` invocation. args[0] is the program name. The report
/// goes to `out`, diagnostics to `err`. Returns 0 on success (including a
/// "fail" verdict) and 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shifteq::tools

#endif  // SHIFTEQ_TOOLS_CLI_HPP
