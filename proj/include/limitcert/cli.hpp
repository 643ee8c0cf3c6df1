#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace limitcert::cli {

enum ExitCode : int {
  kDefinite = 0,
  kUsageError = 1,
  kInconclusive = 2,
};

inline constexpr std::string_view kDefaultRadii = "1e-1:1e-6:geometric:11";
inline constexpr std::string_view kDefaultTGrid = "1:1e-6:geometric:13";
inline constexpr unsigned long long kDefaultSeed = 42;
inline constexpr std::size_t kDefaultSamples = 4096;

/// Grid specification: "start:end:geometric:count", "start:end:linear:count",
/// or a comma-separated list of numbers. Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view spec);

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

} // namespace limitcert::cli
