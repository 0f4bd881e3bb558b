#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvd::cli {

inline constexpr const char* kReportSchema = "bvd.report/1";

enum ExitCode : int { kOk = 0, kContract = 1, kIo = 2 };

// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvd::cli
