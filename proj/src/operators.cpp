#include "expop/operators.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "expop/errors.hpp"
#include "expop/specfun.hpp"

namespace expop {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string cell(const OperatorParams& params, double x) {
    return " (lambda=" + std::to_string(params.lambda()) + ", a=" + std::to_string(params.a()) +
           ", x=" + std::to_string(x) + ")";
}

void require_admissible(const OperatorParams& params, const GrowthBoundedFunction& f, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("x must be finite");
    }
    if (!admissible(params, f, x)) {
        throw GrowthTooFast("growth rate N=" + std::to_string(f.N) + " of " + f.label +
                            " exceeds the kernel decay" + cell(params, x));
    }
}

// ∫ κ(x, ν) factor(ν) dν with a window sized by κ times the envelope of f
// and an extra polynomial degree carried by the factor.
QuadResult integrate_against_kernel(const OperatorParams& params, const GrowthBoundedFunction& f,
                                    double x, const RealFunction& factor, int extra_degree,
                                    const QuadConfig& cfg) {
    const KernelSlice slice(params, x);
    const LogFunction log_weight = [&slice](double nu) { return slice(nu); };
    const LogFunction envelope = [&](double nu) {
        double v = slice(nu) + f.log_envelope(nu);
        if (extra_degree > 0) {
            v += extra_degree * std::log1p(std::fabs(nu - x));
        }
        return v;
    };
    const auto [center, scale] = kernel_location_scale(params, x);
    const Window window = expand_window(envelope, center, scale, cfg);
    return integrate_weighted(log_weight, factor, window, cfg);
}

Polynomial<4> next_numerator(const Polynomial<4>& num, int p) {
    using V = DerivativeKernelPolynomial;
    const auto x = Polynomial<4>::variable(V::X);
    const auto u = Polynomial<4>::variable(V::U);
    const auto lambda = Polynomial<4>::variable(V::Lambda);
    const auto s = x * x + Polynomial<4>::variable(V::A);
    // ∂/∂x at fixed ν acts on u = ν − x as −∂/∂u.
    Polynomial<4> next = s * (num.derivative(V::X) - num.derivative(V::U));
    next -= Rational{2 * p} * (x * num);
    next += lambda * u * num;
    return next;
}

std::array<DerivativeKernelPolynomial, kMaxDerivativeOrder + 1> build_derivative_kernels() {
    Polynomial<4> q0 = Polynomial<4>::constant(Rational{1});
    Polynomial<4> q1 = next_numerator(q0, 0);
    Polynomial<4> q2 = next_numerator(q1, 1);
    Polynomial<4> q3 = next_numerator(q2, 2);
    return {DerivativeKernelPolynomial(0, q0), DerivativeKernelPolynomial(1, q1),
            DerivativeKernelPolynomial(2, q2), DerivativeKernelPolynomial(3, q3)};
}

}  // namespace

bool admissible(const OperatorParams& params, const GrowthBoundedFunction& f, double x) {
    const double a = params.a();
    const double rate =
        params.lambda() / a * (0.5 * std::numbers::pi - std::fabs(std::atan(x / a)));
    return f.N < kAdmissibilitySafety * rate;
}

QuadResult apply_T_detailed(const OperatorParams& params, const GrowthBoundedFunction& f,
                            double x, const QuadConfig& cfg) {
    require_admissible(params, f, x);
    if (f.log_eval) {
        const KernelSlice slice(params, x);
        const LogFunction log_integrand = [&](double nu) { return slice(nu) + f.log_eval(nu); };
        const auto [center, scale] = kernel_location_scale(params, x);
        return integrate_exp_log(log_integrand, expand_window(log_integrand, center, scale, cfg), cfg);
    }
    return integrate_against_kernel(params, f, x, f.eval, 0, cfg);
}

double apply_T(const OperatorParams& params, const GrowthBoundedFunction& f, double x,
               const QuadConfig& cfg) {
    return apply_T_detailed(params, f, x, cfg).value;
}

double mgf_closed_form(const OperatorParams& params, double x, double theta) {
    const double a = params.a();
    const double lambda = params.lambda();
    const double phase = a * theta / lambda;
    if (!std::isfinite(x) || !std::isfinite(theta) ||
        !(std::fabs(std::atan(x / a) + phase) < 0.5 * std::numbers::pi)) {
        throw DomainError("mgf_closed_form: |arctan(x/a) + a*theta/lambda| must be < pi/2");
    }
    const double base = std::cos(phase) - x / a * std::sin(phase);
    if (!(base > 0.0)) {
        throw DomainError("mgf_closed_form: base not positive");
    }
    return std::exp(-lambda * std::log(base));
}

DerivativeKernelPolynomial::DerivativeKernelPolynomial(int order, Polynomial<4> numerator)
    : order_(order), numerator_(std::move(numerator)) {}

std::vector<DerivativeKernelPolynomial::Term> DerivativeKernelPolynomial::terms() const {
    std::map<std::pair<int, int>, Polynomial<2>> grouped;
    for (const auto& [e, c] : numerator_.terms()) {
        const int j = e[U];
        const int i = e[Lambda] - j;
        grouped[{i, j}].add_term({e[X], e[A]}, c);
    }
    std::vector<Term> out;
    out.reserve(grouped.size());
    for (auto& [ij, g] : grouped) {
        out.push_back({ij.first, ij.second, std::move(g)});
    }
    return out;
}

std::vector<double> DerivativeKernelPolynomial::u_coefficients(const OperatorParams& params,
                                                               double x) const {
    const double a2 = params.a() * params.a();
    const double s_pow = std::pow(a2 + x * x, order_);
    std::vector<double> c(static_cast<std::size_t>(order_) + 1, 0.0);
    for (const auto& [e, coef] : numerator_.terms()) {
        double term = coef.convert_to<double>();
        term *= std::pow(params.lambda(), e[Lambda]) * std::pow(x, e[X]) * std::pow(a2, e[A]);
        c[static_cast<std::size_t>(e[U])] += term;
    }
    for (double& v : c) {
        v /= s_pow;
    }
    return c;
}

double DerivativeKernelPolynomial::evaluate(const OperatorParams& params, double x,
                                            double nu) const {
    const auto c = u_coefficients(params, x);
    const double u = nu - x;
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * u + *it;
    }
    return acc;
}

const DerivativeKernelPolynomial& derivative_kernel(int p) {
    static const auto kernels = build_derivative_kernels();
    if (p < 0 || p > kMaxDerivativeOrder) {
        throw DerivativeOrderUnsupported("kernel derivative order " + std::to_string(p) +
                                         " outside 0.." + std::to_string(kMaxDerivativeOrder));
    }
    return kernels[static_cast<std::size_t>(p)];
}

double apply_T_derivative(const OperatorParams& params, const GrowthBoundedFunction& f, double x,
                          int p, const QuadConfig& cfg) {
    const auto& q = derivative_kernel(p);
    require_admissible(params, f, x);
    if (p == 0) {
        return integrate_against_kernel(params, f, x, f.eval, 0, cfg).value;
    }
    const std::vector<double> c = q.u_coefficients(params, x);
    const RealFunction factor = [&](double nu) {
        const double u = nu - x;
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * u + *it;
        }
        return acc * f.eval(nu);
    };
    return integrate_against_kernel(params, f, x, factor, p, cfg).value;
}

double apply_post_widder(double lambda, const GrowthBoundedFunction& f, double x,
                         const QuadConfig& cfg) {
    if (!std::isfinite(lambda) || !(lambda > 0.0)) {
        throw DomainError("Post-Widder: lambda must be positive");
    }
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw DomainError("Post-Widder operator is defined for x > 0 only, got x=" +
                          std::to_string(x));
    }
    if (!(f.N < kAdmissibilitySafety * lambda / x)) {
        throw GrowthTooFast("growth rate N=" + std::to_string(f.N) + " of " + f.label +
                            " exceeds the gamma-kernel decay (lambda=" + std::to_string(lambda) +
                            ", x=" + std::to_string(x) + ")");
    }
    // With ν = e^u: ν^{λ−1} e^{−λν/x} dν = e^{λu − λe^u/x} du.
    const double log_const = lambda * std::log(lambda) - lambda * std::log(x) -
                             ln_gamma_real(lambda);
    const double rate = lambda / x;
    const LogFunction log_weight = [=](double u) {
        const double nu = std::exp(u);
        if (!std::isfinite(nu)) {
            return kNegInf;
        }
        return log_const + lambda * u - rate * nu;
    };
    const LogFunction envelope = [&](double u) {
        const double lw = log_weight(u);
        if (lw == kNegInf) {
            return kNegInf;
        }
        return lw + f.log_envelope(std::exp(u));
    };
    const double scale = std::sqrt(1.0 / lambda + 0.5 / (lambda * lambda));
    if (f.log_eval) {
        const LogFunction log_integrand = [&](double u) {
            const double lw = log_weight(u);
            return lw == kNegInf ? kNegInf : lw + f.log_eval(std::exp(u));
        };
        return integrate_exp_log(log_integrand, expand_window(log_integrand, std::log(x), scale, cfg), cfg)
            .value;
    }
    const RealFunction factor = [&f](double u) { return f.eval(std::exp(u)); };
    const Window window = expand_window(envelope, std::log(x), scale, cfg);
    return integrate_weighted(log_weight, factor, window, cfg).value;
}

}  // namespace expop
