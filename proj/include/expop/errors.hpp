#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expop {

/// Base for every numeric failure raised by the library. `kind()` is the
/// stable error name printed by the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual std::string_view kind() const noexcept = 0;
};

#define EXPOP_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
        [[nodiscard]] std::string_view kind() const noexcept override {      \
            return #Name;                                                     \
        }                                                                     \
    }

/// Argument outside the mathematical domain of the routine.
EXPOP_DEFINE_ERROR(DomainError);
/// Integrand did not decay inside the maximal search window.
EXPOP_DEFINE_ERROR(WindowNotFound);
/// Adaptive refinement hit its panel budget before meeting the tolerance.
EXPOP_DEFINE_ERROR(NotConverged);
/// Growth certificate of f is too weak for the kernel's decay rate.
EXPOP_DEFINE_ERROR(GrowthTooFast);
/// Kernel derivative order beyond the supported range.
EXPOP_DEFINE_ERROR(DerivativeOrderUnsupported);

#undef EXPOP_DEFINE_ERROR

}  // namespace expop
