#pragma once

// The hopfu command-line front end.  Exit status: 0 on success or a passing
// certificate, 1 on a certified failure or a computational error (reported as
// {"error": {"kind", "message"}}), 2 on usage, parse and schema errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace hopfu::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hopfu::cli
