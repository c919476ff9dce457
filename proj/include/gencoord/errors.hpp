#pragma once

#include <stdexcept>
#include <string>

namespace gencoord {

// Base class for all library errors. The `what()` string starts with a
// stable machine-readable tag (e.g. "zigzag-overflow: ...").
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace gencoord
