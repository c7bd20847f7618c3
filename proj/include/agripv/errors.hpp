#pragma once

#include <stdexcept>
#include <string>

namespace agripv {

// Exit-code mapping used by the CLI: ConfigError -> 1, DataError -> 2,
// NumericalError -> 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace agripv
