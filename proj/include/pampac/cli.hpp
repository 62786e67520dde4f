#pragma once

#include <iosfwd>

namespace pampac {

/// Exit codes: 0 when the run reached the end of the lambda range, 1 for any
/// other termination or a runtime failure, 2 for bad flags or unreadable input.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace pampac
