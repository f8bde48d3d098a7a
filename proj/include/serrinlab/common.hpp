#pragma once

#include <stdexcept>

namespace serrinlab {

inline constexpr const char* kVersion = "0.1.0";

/// Bad parameters or malformed input; the CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure did not reach its tolerance; CLI exit code 3.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace serrinlab
