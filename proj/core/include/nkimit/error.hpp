#pragma once

#include <stdexcept>
#include <string>

namespace nkimit {

// Invalid arguments or configuration values. CLI exit code 1.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A random generator could not produce an acceptable instance
// (e.g. no connected graph within the attempt budget). CLI exit code 2.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Eigensolver / fitting failures. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File read/write failures; the message carries the path. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nkimit
