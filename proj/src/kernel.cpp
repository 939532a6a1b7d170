#include "expop/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expop/errors.hpp"
#include "expop/specfun.hpp"

namespace expop {

OperatorParams::OperatorParams(double lambda, double a) : lambda_(lambda), a_(a) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        throw DomainError("lambda must be positive and finite, got " + std::to_string(lambda));
    }
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("a must be positive and finite, got " + std::to_string(a));
    }
    log_prefactor_ = (lambda - 2.0) * std::numbers::ln2 + std::log(lambda) +
                     (lambda - 1.0) * std::log(a) - std::log(std::numbers::pi) -
                     ln_gamma_real(lambda);
}

double log_normalizer(const OperatorParams& params, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("log_normalizer: x must be finite");
    }
    return params.log_prefactor() - params.lambda() * std::log(std::hypot(params.a(), x));
}

double log_kernel(const OperatorParams& params, KernelPoint p) {
    return KernelSlice(params, p.x)(p.nu);
}

double log_kernel_dx(const OperatorParams& params, KernelPoint p) {
    const double a = params.a();
    return params.lambda() * (p.nu - p.x) / (a * a + p.x * p.x);
}

LocationScale kernel_location_scale(const OperatorParams& params, double x) {
    const double a = params.a();
    return {x, std::sqrt((a * a + x * x) / params.lambda())};
}

KernelSlice::KernelSlice(const OperatorParams& params, double x)
    : x_(x),
      half_lambda_(0.5 * params.lambda()),
      log_norm_(log_normalizer(params, x)),
      gamma_scale_(params.lambda() / (2.0 * params.a())) {
    const double angle = std::atan(x / params.a());
    tilt_ = params.lambda() / params.a() * angle;
    decay_rate_ = params.lambda() / params.a() * (0.5 * std::numbers::pi - std::fabs(angle));
}

double KernelSlice::operator()(double nu) const {
    if (!std::isfinite(nu)) {
        return -INFINITY;
    }
    return log_norm_ + log_abs_gamma_sq(half_lambda_, gamma_scale_ * nu) + tilt_ * nu;
}

}  // namespace expop
