#ifndef EQSIM_ERRORS_HPP
#define EQSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqsim {

// Bad configuration or parameter value (CLI exit code 2).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: singular solve, non-finite data (CLI exit code 1).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble (CLI exit code 3).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eqsim

#endif // EQSIM_ERRORS_HPP
