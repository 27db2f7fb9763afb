#pragma once

// Command-line front end. Every command writes one JSON report; tables for
// people go to the error stream.

#include <ostream>
#include <string_view>
#include <utility>

#include "apnkit/report.hpp"

namespace apnkit::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// "m" (default modulus) or "m:0xMOD".
FieldSpec parse_field(std::string_view text);
/// "n" or "a..b", inclusive.
std::pair<int, int> parse_range(std::string_view text);

/// Exit codes: 0 all assertions held, 2 an assertion failed, 1 usage or
/// input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Report without its "timing" member, for determinism comparisons.
json strip_timing(json report);

}  // namespace apnkit::cli
