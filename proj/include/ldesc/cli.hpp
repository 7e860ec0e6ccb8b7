#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldesc {

inline constexpr const char* kToolName = "ldesc";
inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 input or usage error, 2 the computation ran but a
// certificate (or verdict) came out false.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldesc
