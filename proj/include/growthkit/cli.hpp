#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace growthkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --output file); error objects {code, module, message,
/// location?} go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Rounds to the 12 significant digits used in every report.
[[nodiscard]] double report_precision(double v);

}  // namespace growthkit::cli
