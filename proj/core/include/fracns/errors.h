#ifndef FRACNS_ERRORS_H
#define FRACNS_ERRORS_H

#include <stdexcept>
#include <string>

namespace fracns {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define FRACNS_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                          \
        explicit Name(const std::string& msg) : Error(msg) {}      \
    }

FRACNS_DEFINE_ERROR(GridMismatch);
FRACNS_DEFINE_ERROR(NegativeOrderOnNonzeroMean);
FRACNS_DEFINE_ERROR(DomainViolation);
FRACNS_DEFINE_ERROR(JOutOfRange);
FRACNS_DEFINE_ERROR(MeanModeNotZero);
FRACNS_DEFINE_ERROR(NoAdmissibleTheta);
FRACNS_DEFINE_ERROR(ZeroField);
FRACNS_DEFINE_ERROR(NegativeTime);
FRACNS_DEFINE_ERROR(QuadratureNotConverged);
FRACNS_DEFINE_ERROR(CflViolation);
FRACNS_DEFINE_ERROR(NonMonotoneTime);
FRACNS_DEFINE_ERROR(InsufficientSamples);
FRACNS_DEFINE_ERROR(NonPositiveValue);
FRACNS_DEFINE_ERROR(SigmaTooLarge);
FRACNS_DEFINE_ERROR(MalformedReport);
FRACNS_DEFINE_ERROR(UnknownConfigKey);
FRACNS_DEFINE_ERROR(InvalidConfig);

#undef FRACNS_DEFINE_ERROR

} // namespace fracns

#endif
