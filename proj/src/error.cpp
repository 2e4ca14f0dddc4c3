#include "flipdist/error.hpp"

namespace flipdist {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::InvalidDomain: return "INVALID_DOMAIN";
        case ErrorCode::IllegalFlip: return "ILLEGAL_FLIP";
        case ErrorCode::DomainMismatch: return "DOMAIN_MISMATCH";
        case ErrorCode::EmptyRegion: return "EMPTY_REGION";
        case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
        case ErrorCode::InfeasibleSag: return "INFEASIBLE_SAG";
        case ErrorCode::CapNotVisible: return "CAP_NOT_VISIBLE";
        case ErrorCode::SharpVertex: return "SHARP_VERTEX";
        case ErrorCode::EmptyFeasibleRegion: return "EMPTY_FEASIBLE_REGION";
        case ErrorCode::Not3Connected: return "NOT_3_CONNECTED";
        case ErrorCode::NotPlanar: return "NOT_PLANAR";
        case ErrorCode::InvalidOuterFace: return "INVALID_OUTER_FACE";
        case ErrorCode::InternalSharpVertex: return "INTERNAL_SHARP_VERTEX";
        case ErrorCode::NotACover: return "NOT_A_COVER";
        case ErrorCode::IllegalScript: return "ILLEGAL_SCRIPT";
        case ErrorCode::EndStateMismatch: return "END_STATE_MISMATCH";
        case ErrorCode::InvalidInstance: return "INVALID_INSTANCE";
        case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InfeasibleSag:
        case ErrorCode::CapNotVisible:
        case ErrorCode::SharpVertex:
        case ErrorCode::EmptyFeasibleRegion:
        case ErrorCode::EmptyRegion:
        case ErrorCode::InternalSharpVertex:
            return 3;
        case ErrorCode::CapExceeded:
            return 4;
        case ErrorCode::Io:
            return 5;
        default:
            return 2;
    }
}

}  // namespace flipdist
