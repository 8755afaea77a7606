#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NCS_DEFINE_ERROR(Name)                                 \
    struct Name : ComputationError {                           \
        explicit Name(const std::string& what = #Name)         \
            : ComputationError(std::string(#Name) + ": " + what) {} \
    }

NCS_DEFINE_ERROR(DivisionByZero);
NCS_DEFINE_ERROR(NotInvertible);
NCS_DEFINE_ERROR(PoleAtValue);
NCS_DEFINE_ERROR(ExponentOverflow);
NCS_DEFINE_ERROR(DegreeZero);
NCS_DEFINE_ERROR(NotSquare);
NCS_DEFINE_ERROR(WrongAlgebra);
NCS_DEFINE_ERROR(NotUnitModulus);
NCS_DEFINE_ERROR(MissingPhase);
NCS_DEFINE_ERROR(NotTraceClass);
NCS_DEFINE_ERROR(DegreeMismatch);
NCS_DEFINE_ERROR(NonIntegerPairing);
NCS_DEFINE_ERROR(ModelVerificationFailed);
NCS_DEFINE_ERROR(BadPresentation);
NCS_DEFINE_ERROR(ParseError);

#undef NCS_DEFINE_ERROR

} // namespace ncs
