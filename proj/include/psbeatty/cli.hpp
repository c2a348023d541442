#ifndef PSBEATTY_CLI_HPP
#define PSBEATTY_CLI_HPP

#include <ostream>
#include <string>

namespace psb::cli {

inline constexpr const char* kSchema = "psbeatty.report.v1";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;      // bad flags or values; nothing written
inline constexpr int kViolation = 2;  // module error or failed invariant

// Runs one command line (argv[0] is the program name). Reports go to --out
// when given (written atomically) and to `out` otherwise; diagnostics go to
// `err`. Module errors print a JSON error body on `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Writes `text` to `path` via a temporary file in the same directory and a
// rename, so readers never see a partial report.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace psb::cli

#endif  // PSBEATTY_CLI_HPP
