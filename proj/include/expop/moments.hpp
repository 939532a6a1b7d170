#pragma once

// Raw and central moments of T_{λ,a}: numerically from the truncated Taylor
// jet of the moment generating function, and exactly from the central-moment
// recurrence μ_{p+1} = (a² + x²)/λ · (p μ_{p−1} + μ_p′).

#include <vector>

#include "expop/kernel.hpp"
#include "expop/polynomial.hpp"

namespace expop {

/// Largest moment order supported by either route.
inline constexpr int kMaxMomentOrder = 12;

/// m_0..m_P with m_p = (T_{λ,a} e_p)(x).
std::vector<double> raw_moments_jet(const OperatorParams& params, double x, int max_order);

/// μ_0..μ_P with μ_p = (T_{λ,a} (ν − x)^p)(x).
std::vector<double> central_moments_jet(const OperatorParams& params, double x, int max_order);

/// Exact μ_p(x) as a polynomial in x, a² and 1/λ with rational coefficients.
class CentralMomentPolynomial {
public:
    enum Var : std::size_t { X = 0, A2 = 1, InvLambda = 2 };

    CentralMomentPolynomial(int order, Polynomial<3> poly);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const Polynomial<3>& polynomial() const noexcept { return poly_; }

    /// Coefficient of x^i (a²)^j λ^{−k}.
    [[nodiscard]] Rational coefficient(int i, int j, int k) const;
    [[nodiscard]] double evaluate(const OperatorParams& params, double x) const;
    [[nodiscard]] std::string to_string() const;

private:
    int order_;
    Polynomial<3> poly_;
};

/// Built once by the recurrence from μ₀ = 1, μ₁ = 0; 0 ≤ p ≤ 12.
const CentralMomentPolynomial& central_moment_symbolic(int p);

/// Two-term expansion of (T e_p)(x) in 1/λ, accurate to O(λ^{−3}):
///   x^p + [p(p−1)/(2λ) + p(p−1)(p−2)(3p−1)/(24λ²)] x^p
///       + a² [p(p−1)/(2λ) + p(p−1)(p−2)(3p−5)/(12λ²)] x^{p−2}
///       + a⁴ [p(p−1)(p−2)(p−3)/(8λ²)] x^{p−4}.
double asymptotic_raw_moment(int p, const OperatorParams& params, double x);

}  // namespace expop
