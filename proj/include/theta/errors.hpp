#pragma once

#include <stdexcept>
#include <string>

namespace theta {

// Error taxonomy shared by the library and the CLI.  Each error carries a
// stable code string so the CLI can map failures to machine-readable output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define THETA_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& msg = "") : Error(#Name, msg) {} \
    }

THETA_DEFINE_ERROR(DivisionByZero);
THETA_DEFINE_ERROR(NoSuchRoot);
THETA_DEFINE_ERROR(NotASquare);
THETA_DEFINE_ERROR(LevelMismatch);
THETA_DEFINE_ERROR(DivisibilityViolation);
THETA_DEFINE_ERROR(InconsistentBranch);
THETA_DEFINE_ERROR(DegeneratePoint);
THETA_DEFINE_ERROR(NotTorsion);
THETA_DEFINE_ERROR(NotSymCompatible);
THETA_DEFINE_ERROR(NotSymplectic);
THETA_DEFINE_ERROR(NotIsotropic);
THETA_DEFINE_ERROR(NotABasis);
THETA_DEFINE_ERROR(NotInvolutive);
THETA_DEFINE_ERROR(NotRiemannPosition);
THETA_DEFINE_ERROR(PreconditionViolated);
THETA_DEFINE_ERROR(SchemaError);
THETA_DEFINE_ERROR(NoRationalTorsion);

#undef THETA_DEFINE_ERROR

} // namespace theta
