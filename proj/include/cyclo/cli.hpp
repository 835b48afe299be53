#pragma once

#include <ostream>

namespace cyclo {

/// Runs the command line front end. Returns 0 on success, 1 on library
/// errors and usage errors, 2 on internal failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cyclo
