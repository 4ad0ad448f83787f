#pragma once

#include <stdexcept>
#include <string>

namespace ascurves {

// Exit-code buckets used by the CLI: 2 = parse/validation, 3 = unsupported
// stratum, 4 = internal inconsistency.
enum class ErrorKind {
    Validation,
    UnsupportedStratum,
    InternalInconsistency,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

#define ASCURVES_DEFINE_ERROR(Name, Kind)                                              \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}       \
    }

ASCURVES_DEFINE_ERROR(NotPrimeError, Validation);
ASCURVES_DEFINE_ERROR(EvenCharacteristicError, Validation);
ASCURVES_DEFINE_ERROR(NotIrreducibleError, Validation);
ASCURVES_DEFINE_ERROR(DivisionByZeroError, Validation);
ASCURVES_DEFINE_ERROR(FieldMismatchError, Validation);
ASCURVES_DEFINE_ERROR(ZeroPolynomialError, Validation);
ASCURVES_DEFINE_ERROR(SingularMatrixError, Validation);
ASCURVES_DEFINE_ERROR(TrivialCoverError, Validation);
ASCURVES_DEFINE_ERROR(NotMonicError, Validation);
ASCURVES_DEFINE_ERROR(DegreeDivisibleByPError, Validation);
ASCURVES_DEFINE_ERROR(UnsupportedNestingError, UnsupportedStratum);
ASCURVES_DEFINE_ERROR(InvalidPartitionError, Validation);
ASCURVES_DEFINE_ERROR(InconsistentValuesError, Validation);
ASCURVES_DEFINE_ERROR(DomainTooLargeError, Validation);
ASCURVES_DEFINE_ERROR(ParseError, Validation);
ASCURVES_DEFINE_ERROR(UndeclaredGeneratorError, Validation);
ASCURVES_DEFINE_ERROR(UnsupportedStratumError, UnsupportedStratum);
ASCURVES_DEFINE_ERROR(InternalError, InternalInconsistency);

#undef ASCURVES_DEFINE_ERROR

}  // namespace ascurves
