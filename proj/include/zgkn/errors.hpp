#pragma once

#include <stdexcept>
#include <string>

namespace zgkn {

// All solver failures derive from Error and carry a stable code name that the
// C API and CLI map to error codes / messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define ZGKN_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& message)                 \
            : Error(#Name, message) {}                            \
    }

// numerics
ZGKN_DEFINE_ERROR(StepUnderflow);
ZGKN_DEFINE_ERROR(NonFiniteRhs);
ZGKN_DEFINE_ERROR(IntegrationFailure);
ZGKN_DEFINE_ERROR(NoSignChange);
ZGKN_DEFINE_ERROR(MaxIterations);
ZGKN_DEFINE_ERROR(TooFewSamples);

// geometry / fields
ZGKN_DEFINE_ERROR(RingSingularity);
ZGKN_DEFINE_ERROR(AxisSingularity);

// angular / radial / spectrum
ZGKN_DEFINE_ERROR(NoBranchFound);
ZGKN_DEFINE_ERROR(OutOfGap);
ZGKN_DEFINE_ERROR(TruncationTooSmall);
ZGKN_DEFINE_ERROR(InvalidQuantumNumbers);

// wavefunction
ZGKN_DEFINE_ERROR(ProfileUnderflow);
ZGKN_DEFINE_ERROR(ZeroNorm);

#undef ZGKN_DEFINE_ERROR

} // namespace zgkn
