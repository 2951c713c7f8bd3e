#pragma once

#include <stdexcept>
#include <string>

namespace admissa {

// Malformed user input: bad config, unknown ids, out-of-range parameters.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Problems with the data itself: unreadable CSV, missing labels, empty files.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken internal invariant. Seeing one of these is a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace admissa
