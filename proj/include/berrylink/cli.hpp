#pragma once

#include <string>
#include <vector>

namespace berrylink::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Parse an angle token: plain radians ("1.57") or a pi multiple ("0.3pi").
double parse_angle(const std::string& token);

/// Run the full command-line interface. Exit codes: 0 success, 2 config
/// error, 3 numerical failure, 4 I/O failure.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace berrylink::cli
