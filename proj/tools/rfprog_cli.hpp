#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfprog::cli {

// Parses argv, runs the selected command, and writes JSON (default) or CSV
// to `out`. Returns 0 on success, 2 on a usage error (bad flags, bad
// expressions, dependent inputs), 1 on a runtime failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rfprog::cli
