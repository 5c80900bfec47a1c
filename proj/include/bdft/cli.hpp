#ifndef BDFT_CLI_HPP
#define BDFT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bdft {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 1 on a failed check or exhausted budget, 2 on bad arguments.
/// Errors are written to `err` as one JSON record.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdft

#endif  // BDFT_CLI_HPP
