#pragma once

#include <stdexcept>
#include <string>

namespace gkz {

/// Base class of every error raised by the library. `kind()` is the stable
/// name used in reports and on the command line.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GKZ_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

GKZ_DEFINE_ERROR(InvalidConfiguration);
GKZ_DEFINE_ERROR(DegenerateConfiguration);
GKZ_DEFINE_ERROR(UnsupportedDimension);
GKZ_DEFINE_ERROR(GenericityFailure);
GKZ_DEFINE_ERROR(NoPole);
GKZ_DEFINE_ERROR(ResonantBranch);
GKZ_DEFINE_ERROR(HypothesisViolation);
GKZ_DEFINE_ERROR(NonDecayingEndpoint);
GKZ_DEFINE_ERROR(StepTooSmall);
GKZ_DEFINE_ERROR(ParseError);

#undef GKZ_DEFINE_ERROR

}  // namespace gkz
