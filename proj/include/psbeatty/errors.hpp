#ifndef PSBEATTY_ERRORS_HPP
#define PSBEATTY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psb {

// Base for every error raised by the library. code() is a stable
// identifier used in CLI error bodies.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define PSB_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    };

PSB_DEFINE_ERROR(InvalidArgument)
PSB_DEFINE_ERROR(ParseError)
PSB_DEFINE_ERROR(AmbiguousFloor)
PSB_DEFINE_ERROR(AmbiguousCompare)
PSB_DEFINE_ERROR(PrecisionExhausted)
PSB_DEFINE_ERROR(WindowTooLarge)
PSB_DEFINE_ERROR(RangeTooLarge)
PSB_DEFINE_ERROR(RationalInput)
PSB_DEFINE_ERROR(IrrationalRequired)
PSB_DEFINE_ERROR(InequalityViolated)
PSB_DEFINE_ERROR(HypothesisViolated)
PSB_DEFINE_ERROR(TooManyFactorizations)
PSB_DEFINE_ERROR(MismatchedCounts)

#undef PSB_DEFINE_ERROR

}  // namespace psb

#endif  // PSBEATTY_ERRORS_HPP
