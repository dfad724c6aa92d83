#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace krf {

// Exit codes used by the command-line front end.
enum class ExitCode : int {
    success = 0,
    usage = 2,
    data = 3,
    numerical = 4,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual ExitCode exit_code() const noexcept { return ExitCode::data; }
};

/// Precondition violated by the caller (empty cloud, k = 0, bad radius...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Rotation is not orthonormal or has negative determinant.
class InvalidPose : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

/// Point configuration does not determine a unique rigid transform.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents. Carries the byte offset where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::uint64_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
    [[nodiscard]] std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

/// Bad configuration: missing paths, out-of-range fields, inconsistent reports.
class ValidationError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

}  // namespace krf
