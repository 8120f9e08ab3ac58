#pragma once

#include <stdexcept>
#include <string>

namespace t310 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Term-count guard, enumeration caps, search budgets.
struct CapacityError : Error {
    using Error::Error;
};

struct EvalError : Error {
    using Error::Error;
};

}  // namespace t310
