#pragma once

#include <iosfwd>

namespace savskit::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parses argv, runs one subcommand (fit, select, cd, bench, metrics,
/// report), writes its outputs plus manifest.json, and returns the exit
/// status: 0 on success, otherwise the ErrorKind code. Failures print a single
/// machine-parsable line to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace savskit::cli
