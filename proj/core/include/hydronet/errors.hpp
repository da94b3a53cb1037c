#pragma once

#include <stdexcept>
#include <string>

namespace hydronet {

enum class ErrorCode {
    UnresolvedReference,
    UnsupportedUnits,
    MalformedLine,
    MissingSection,
    UnsupportedFeature,
    DegenerateGeometry,
    EmptyNetwork,
    SpeedBelowFloor,
    UnsupportedValveMode,
    NewtonDivergence,
    SingularAlgebraicJacobian,
    SingularJx,
    SingularAlgebraicPivot,
    SingularStepMatrix,
    NotAnEquilibrium,
    WindowTooWide,
    InsufficientSamples,
    GridMismatch,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a stable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace hydronet
