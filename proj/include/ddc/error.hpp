#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : Error {
    using Error::Error;
};

struct InvalidParam : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct MemoryBudgetExceeded : Error {
    using Error::Error;
};

struct EmptyFragment : Error {
    using Error::Error;
};

struct EmptyGroup : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

} // namespace ddc
