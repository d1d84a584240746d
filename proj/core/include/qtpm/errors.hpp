#pragma once

#include <stdexcept>
#include <string>

namespace qtpm {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define QTPM_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

QTPM_DEFINE_ERROR(DimensionMismatch);
QTPM_DEFINE_ERROR(NonFiniteEntry);
QTPM_DEFINE_ERROR(NotHermitian);
QTPM_DEFINE_ERROR(NoConvergence);
QTPM_DEFINE_ERROR(NotAState);
QTPM_DEFINE_ERROR(SupportViolation);
QTPM_DEFINE_ERROR(NotUnitary);
QTPM_DEFINE_ERROR(InvalidBeta);
QTPM_DEFINE_ERROR(InvalidTemperatureOrder);
QTPM_DEFINE_ERROR(InvalidAssignment);
QTPM_DEFINE_ERROR(OutcomeOutOfRange);
QTPM_DEFINE_ERROR(NotNormalized);
QTPM_DEFINE_ERROR(BasisMismatch);
QTPM_DEFINE_ERROR(DegenerateBasis);
QTPM_DEFINE_ERROR(NotTimeReversalSymmetric);
QTPM_DEFINE_ERROR(NonRealResult);
QTPM_DEFINE_ERROR(ChiZero);
QTPM_DEFINE_ERROR(MissingTimeFamily);
QTPM_DEFINE_ERROR(ConfigError);
QTPM_DEFINE_ERROR(ConfigMismatch);
QTPM_DEFINE_ERROR(CheckFailed);
QTPM_DEFINE_ERROR(IoError);

#undef QTPM_DEFINE_ERROR

} // namespace qtpm
