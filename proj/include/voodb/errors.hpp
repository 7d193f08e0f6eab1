#pragma once

#include <stdexcept>
#include <string>

namespace voodb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken model invariant: scheduling into the past, unresolvable OID,
// releasing a resource that is not held.
class ModelError : public Error {
public:
    using Error::Error;
};

// The event list drained before the stop condition was reached.
class DeadlockError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    explicit ConfigError(const std::string& message) : ConfigError(0, message) {}

    // 0 when the error is not tied to a source line.
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace voodb
