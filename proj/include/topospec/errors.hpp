#pragma once

#include <stdexcept>
#include <string>

namespace topospec {

// Error categories carry a stable process exit code for the CLI.
// 0 = success, 2 = soft flags (NoConvergence/NoRoots), 1 = parse/generic.
enum class ErrorCode : int {
    Generic = 1,
    ParseError = 1,
    InvalidParameter = 4,
    DegenerateMetric = 5,
    NonFiniteEvaluation = 6,
    EmptyDomain = 7,
    MissingTransition = 8,
    DegreeOverflow = 9,
    DimensionTooLow = 10,
    UnknownGroup = 11,
    NoTurningPoint = 12,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

#define TOPOSPEC_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what)                             \
            : Error(ErrorCode::Name, std::string(#Name ": ") + what) {}    \
    }

TOPOSPEC_DEFINE_ERROR(ParseError);
TOPOSPEC_DEFINE_ERROR(InvalidParameter);
TOPOSPEC_DEFINE_ERROR(DegenerateMetric);
TOPOSPEC_DEFINE_ERROR(NonFiniteEvaluation);
TOPOSPEC_DEFINE_ERROR(EmptyDomain);
TOPOSPEC_DEFINE_ERROR(MissingTransition);
TOPOSPEC_DEFINE_ERROR(DegreeOverflow);
TOPOSPEC_DEFINE_ERROR(DimensionTooLow);
TOPOSPEC_DEFINE_ERROR(UnknownGroup);
TOPOSPEC_DEFINE_ERROR(NoTurningPoint);

#undef TOPOSPEC_DEFINE_ERROR

} // namespace topospec
