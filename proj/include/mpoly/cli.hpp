#pragma once

#include <iosfwd>

namespace mpoly {

// Exit codes: 0 ok, 1 a verify claim failed, 2 bad input, 3 numerical failure.
int cli_main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mpoly
