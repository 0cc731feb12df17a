// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace provstamp::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // no match, invalid record, MODIFIED digest
inline constexpr int kUsage = 2;
inline constexpr int kIoError = 3;   // I/O, container or JSON syntax problem

/// Runs the provstamp command line. `args` excludes the program name.
/// Data goes to `out`, diagnostics to `err`; "-" arguments read `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace provstamp::cli
