#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempora {

/// Exit codes: 0 success, 1 validation failure, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempora
