// Command-line front end. Exit codes: 0 ok, 2 invalid config or plan,
// 3 I/O or parse failure, 4 statistical validation failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asd::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kIoFailure = 3,
    kValidationFailure = 4,
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asd::cli
