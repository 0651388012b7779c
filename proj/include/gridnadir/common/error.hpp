#pragma once

#include <stdexcept>
#include <string>

namespace gridnadir {

/// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
    domain = 1,       // infeasible problem, bad data, numeric failure
    usage = 2,        // malformed arguments or files
    environment = 3,  // missing solver executable, unwritable paths
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

struct EnvironmentError : Error {
    explicit EnvironmentError(const std::string& what) : Error(ErrorKind::environment, what) {}
};

}  // namespace gridnadir
