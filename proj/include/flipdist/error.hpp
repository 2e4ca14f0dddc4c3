#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flipdist {

enum class ErrorCode {
    ParseError,
    InvalidDomain,
    IllegalFlip,
    DomainMismatch,
    EmptyRegion,
    CapExceeded,
    InfeasibleSag,
    CapNotVisible,
    SharpVertex,
    EmptyFeasibleRegion,
    Not3Connected,
    NotPlanar,
    InvalidOuterFace,
    InternalSharpVertex,
    NotACover,
    IllegalScript,
    EndStateMismatch,
    InvalidInstance,
    Io,
};

std::string_view error_code_name(ErrorCode code);

/// Process exit code for the command-line front end.
/// 2 validation, 3 infeasible geometry, 4 budget, 5 I/O.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace flipdist
