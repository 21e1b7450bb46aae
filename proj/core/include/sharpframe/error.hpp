#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpframe {

enum class ErrorKind {
    dimension,
    parameter,
    input,
    training,
    backend,
    io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Base of every exception thrown by the library. The kind is stable and is
// what the CLI prints in its machine-parseable error line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& message) : Error(ErrorKind::dimension, message) {}
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& message) : Error(ErrorKind::parameter, message) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(ErrorKind::input, message) {}
};

class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& message) : Error(ErrorKind::training, message) {}
};

class BackendError : public Error {
public:
    explicit BackendError(const std::string& message) : Error(ErrorKind::backend, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::io, message) {}
};

} // namespace sharpframe
