#include "hydronet/errors.hpp"

namespace hydronet {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnresolvedReference: return "UnresolvedReference";
        case ErrorCode::UnsupportedUnits: return "UnsupportedUnits";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::MissingSection: return "MissingSection";
        case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
        case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorCode::EmptyNetwork: return "EmptyNetwork";
        case ErrorCode::SpeedBelowFloor: return "SpeedBelowFloor";
        case ErrorCode::UnsupportedValveMode: return "UnsupportedValveMode";
        case ErrorCode::NewtonDivergence: return "NewtonDivergence";
        case ErrorCode::SingularAlgebraicJacobian: return "SingularAlgebraicJacobian";
        case ErrorCode::SingularJx: return "SingularJx";
        case ErrorCode::SingularAlgebraicPivot: return "SingularAlgebraicPivot";
        case ErrorCode::SingularStepMatrix: return "SingularStepMatrix";
        case ErrorCode::NotAnEquilibrium: return "NotAnEquilibrium";
        case ErrorCode::WindowTooWide: return "WindowTooWide";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace hydronet
