#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "semistatic/io.hpp"

namespace semistatic {

enum ExitCode : int { Pass = 0, PropertyFailure = 1, InputError = 2 };

// Runs one command; args exclude the program name. Thread count comes from SEMISTATIC_THREADS.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Indented key/value rendering used by --format text.
std::string render_text(const Json& report);

}  // namespace semistatic
