#pragma once

#include <iosfwd>

namespace sketchrec::cli {

/// Exit codes. CLI11 usage errors keep CLI11's own codes.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,  // parse/validation failure in a readable file
  kIoError = 2,       // missing or unreadable file, unwritable directory
};

/// Runs the `sketchrec` command line against the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sketchrec::cli
