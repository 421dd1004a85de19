#pragma once

#include <ostream>

namespace mvdl::cli {

// Exit status: 0 holds/success, 1 fails, 2 usage or input error,
// 3 budget exceeded.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvdl::cli
