#pragma once

#include <iosfwd>

namespace qfp::tools {

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on a domain
/// error (error JSON on `err`) and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfp::tools
