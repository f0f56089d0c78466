#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlheat {

/// Failure categories raised by the solver library. The CLI maps these onto
/// exit codes and prints `category()` as the machine-readable tag.
enum class ErrorKind {
    InvalidArgument,
    ConductivityDomain,
    Mesh,
    Domain,
    TimeMesh,
    NonFiniteState,
    SingularJacobian,
    Divergence,
    NoSteadyState,
    Estimator,
    March,
    Config,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view category() const noexcept { return to_string(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace nlheat
