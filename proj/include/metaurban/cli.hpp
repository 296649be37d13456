#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace metaurban {

// Exit codes: 0 success, 1 validation/alignment failure, 2 input error,
// 3 transport/endpoint failure.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInputError = 2;
constexpr int kExitTransport = 3;

// The whole CLI behind a callable surface so tests can drive it in-process.
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metaurban
