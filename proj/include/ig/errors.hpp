#pragma once

#include <stdexcept>
#include <string>

namespace ig {

// Error categories map 1:1 onto CLI exit codes (see exit_code_for).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer overflow in evidence arithmetic. Never wrapped silently.
struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_io = 3,
    exit_data = 4,
    exit_arithmetic = 5,
};

}  // namespace ig
