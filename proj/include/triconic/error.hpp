#pragma once

#include <stdexcept>
#include <string>

namespace triconic {

enum class ErrorKind {
    PointAtInfinity,
    DegenerateTriangle,
    ParallelLines,
    InvalidAxisLength,
    NoFiniteCenter,
    RankDeficient,
    LineOnConic,
    TrilaterationInconsistent,
    DegenerateResult,
    DegenerateMember,
    PointOffSideline,
    NotFound,
    NotConverged,
    DomainError,
    UnknownProposition,
    ConstructionFailed,
    EmptyScene,
    DriverNotOnLocus,
    ParseError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace triconic
