#pragma once

// Kernel of the exponential-type operator associated with a² + x²:
//
//   κ(x, ν) = 2^{λ−2} λ a^{λ−1} / (π Γ(λ) (a² + x²)^{λ/2})
//             · |Γ(λ/2 + iλν/(2a))|² · exp((λν/a) arctan(x/a)),
//
// which solves ∂κ/∂x = λ(ν − x) κ / (a² + x²) and integrates to one in ν.
// Values span hundreds of orders of magnitude, so only ln κ is exposed.

namespace expop {

/// The pair (λ, a); both strictly positive and finite.
class OperatorParams {
public:
    OperatorParams(double lambda, double a);

    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double a() const noexcept { return a_; }

    /// ln[2^{λ−2} λ a^{λ−1} / (π Γ(λ))], the x-independent part of the
    /// normalizer.
    [[nodiscard]] double log_prefactor() const noexcept { return log_prefactor_; }

    /// Ismail–May operator: the a = 1 member of the family.
    static OperatorParams ismail_may(double lambda) { return {lambda, 1.0}; }

private:
    double lambda_;
    double a_;
    double log_prefactor_;
};

struct KernelPoint {
    double x;
    double nu;
};

struct LocationScale {
    double center;
    double scale;
};

double log_normalizer(const OperatorParams& params, double x);
double log_kernel(const OperatorParams& params, KernelPoint p);

/// ∂/∂x ln κ = λ(ν − x)/(a² + x²).
double log_kernel_dx(const OperatorParams& params, KernelPoint p);

/// Mean x and standard deviation √((a² + x²)/λ) of the kernel density.
LocationScale kernel_location_scale(const OperatorParams& params, double x);

/// ν ↦ ln κ(x, ν) at a fixed x, with the x-dependent pieces hoisted.
class KernelSlice {
public:
    KernelSlice(const OperatorParams& params, double x);

    double operator()(double nu) const;

    [[nodiscard]] double x() const noexcept { return x_; }
    /// Exponential decay rate of κ in |ν|: (λ/a)(π/2 − |arctan(x/a)|).
    [[nodiscard]] double decay_rate() const noexcept { return decay_rate_; }

private:
    double x_;
    double half_lambda_;
    double log_norm_;
    double gamma_scale_;  // λ/(2a)
    double tilt_;         // (λ/a) arctan(x/a)
    double decay_rate_;
};

}  // namespace expop
