#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace expop {

/// A real function with a growth certificate
///   |f(ν)| ≤ K (1 + |ν|)^degree e^{N|ν|}.
/// `degree` = 0 is the plain exponential certificate; a positive degree lets
/// polynomially bounded functions carry N = 0 while still telling the window
/// search how fast they grow.
struct GrowthBoundedFunction {
    std::function<double(double)> eval;
    /// Optional ln f(ν) for strictly positive f; lets operators integrate
    /// in log space where f itself would overflow.
    std::function<double(double)> log_eval;
    double K = 1.0;
    double N = 0.0;
    int degree = 0;
    std::string label;

    double operator()(double nu) const { return eval(nu); }

    /// ln of the certificate bound at ν.
    [[nodiscard]] double log_envelope(double nu) const;

    /// The same function under ν ↦ ν/λ, with its certificate transported.
    [[nodiscard]] GrowthBoundedFunction rescaled(double lambda) const;
};

/// A growth-bounded function that also knows its derivatives analytically.
struct SmoothFunction {
    GrowthBoundedFunction f;
    /// derivative(k, x) = f^{(k)}(x) for 0 ≤ k ≤ max_order.
    std::function<double(int, double)> derivative;
    int max_order = 0;

    [[nodiscard]] double diff(int k, double x) const;
};

/// e_p(ν) = ν^p.
SmoothFunction monomial(int p);
/// ν sin ν.
SmoothFunction x_sin_x();
/// −(ν/2) cos(πν).
SmoothFunction x_cos_pi_x();
/// e^{−ν²}.
SmoothFunction gauss();
/// e^{θν}.
SmoothFunction exp_theta(double theta);

/// Names accepted by make_function: e0..e6, xsinx, xcospix, gauss, exp.
const std::vector<std::string>& function_names();

/// Look up a built-in function; `theta` is required for "exp".
SmoothFunction make_function(std::string_view name, std::optional<double> theta = {});

}  // namespace expop
