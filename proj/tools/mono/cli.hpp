#pragma once

#include <string>
#include <vector>

namespace mono::cli {

// Exit statuses: 0 success, 1 verification failure (e.g. a found
// counterexample), 2 usage error, 3 capacity error.
int dispatch(int argc, const char* const* argv);
int dispatch(const std::vector<std::string>& args);  // without argv[0]

}  // namespace mono::cli
