#include "triconic/error.hpp"

namespace triconic {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::PointAtInfinity: return "PointAtInfinity";
        case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorKind::ParallelLines: return "ParallelLines";
        case ErrorKind::InvalidAxisLength: return "InvalidAxisLength";
        case ErrorKind::NoFiniteCenter: return "NoFiniteCenter";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::LineOnConic: return "LineOnConic";
        case ErrorKind::TrilaterationInconsistent: return "TrilaterationInconsistent";
        case ErrorKind::DegenerateResult: return "DegenerateResult";
        case ErrorKind::DegenerateMember: return "DegenerateMember";
        case ErrorKind::PointOffSideline: return "PointOffSideline";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::UnknownProposition: return "UnknownProposition";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::EmptyScene: return "EmptyScene";
        case ErrorKind::DriverNotOnLocus: return "DriverNotOnLocus";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace triconic
