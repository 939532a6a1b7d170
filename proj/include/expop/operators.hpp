#pragma once

// Application of T_{λ,a}, its x-derivatives, and the Post–Widder operator by
// log-domain quadrature, plus the closed-form moment generating function.

#include <vector>

#include "expop/functions.hpp"
#include "expop/kernel.hpp"
#include "expop/polynomial.hpp"
#include "expop/quadrature.hpp"

namespace expop {

/// Safety factor applied to the kernel decay rate when checking a growth
/// certificate.
inline constexpr double kAdmissibilitySafety = 0.9;

/// Highest supported kernel derivative order.
inline constexpr int kMaxDerivativeOrder = 3;

/// N < 0.9 (λ/a)(π/2 − |arctan(x/a)|).
bool admissible(const OperatorParams& params, const GrowthBoundedFunction& f, double x);

/// (T_{λ,a} f)(x). Throws GrowthTooFast, NotConverged, WindowNotFound.
double apply_T(const OperatorParams& params, const GrowthBoundedFunction& f, double x,
               const QuadConfig& cfg = {});
QuadResult apply_T_detailed(const OperatorParams& params, const GrowthBoundedFunction& f,
                            double x, const QuadConfig& cfg = {});

/// (cos(aθ/λ) − (x/a) sin(aθ/λ))^{−λ}; requires |arctan(x/a) + aθ/λ| < π/2.
double mgf_closed_form(const OperatorParams& params, double x, double theta);

/// Q_p(x, ν) = κ⁻¹ ∂ᵖκ/∂xᵖ, held as the numerator
///   (a² + x²)^p Q_p = Σ_{2i+j ≤ p} λ^{i+j} (ν − x)^j G_{i,j,p}(x, a²)
/// with exact integer coefficients.
class DerivativeKernelPolynomial {
public:
    /// Variables of the numerator: λ, u = ν − x, x, A = a².
    enum Var : std::size_t { Lambda = 0, U = 1, X = 2, A = 3 };

    struct Term {
        int i;
        int j;
        Polynomial<2> g;  ///< G_{i,j,p} in (x, a²)
    };

    DerivativeKernelPolynomial(int order, Polynomial<4> numerator);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const Polynomial<4>& numerator() const noexcept { return numerator_; }
    [[nodiscard]] std::vector<Term> terms() const;

    /// Coefficients c_j with Q_p = Σ c_j (ν − x)^j at fixed (λ, a, x).
    [[nodiscard]] std::vector<double> u_coefficients(const OperatorParams& params,
                                                     double x) const;
    [[nodiscard]] double evaluate(const OperatorParams& params, double x, double nu) const;

private:
    int order_;
    Polynomial<4> numerator_;
};

/// Q_p for 0 ≤ p ≤ 3; throws DerivativeOrderUnsupported otherwise.
const DerivativeKernelPolynomial& derivative_kernel(int p);

/// (dᵖ/dxᵖ T_{λ,a} f)(x) = ∫ Q_p κ f dν.
double apply_T_derivative(const OperatorParams& params, const GrowthBoundedFunction& f, double x,
                          int p, const QuadConfig& cfg = {});

/// (P_λ f)(x) = λ^λ/(x^λ Γ(λ)) ∫₀^∞ ν^{λ−1} e^{−λν/x} f(ν) dν, for x > 0.
/// Integrated in u = ln ν so that the origin is never sampled.
double apply_post_widder(double lambda, const GrowthBoundedFunction& f, double x,
                         const QuadConfig& cfg = {});

}  // namespace expop
