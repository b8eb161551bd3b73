#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sf::cli {

// Runs the command line; machine-readable output goes to `out`, diagnostics to
// `err`. Returns 0 on success, 1 if a verify suite has failing checks, 2 on
// usage, input or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sf::cli
