#include "expop/moments.hpp"

#include <array>
#include <cmath>
#include <string>

#include "expop/errors.hpp"
#include "expop/jet.hpp"

namespace expop {

namespace {

void check_order(int max_order) {
    if (max_order < 0 || max_order > kMaxMomentOrder) {
        throw DomainError("moment order must be in 0.." + std::to_string(kMaxMomentOrder) +
                          ", got " + std::to_string(max_order));
    }
}

// −λ ln(cos(aθ/λ) − (x/a) sin(aθ/λ)) as a jet in θ.
Jet log_mgf_jet(const OperatorParams& params, double x, std::size_t order) {
    const double a = params.a();
    const double lambda = params.lambda();
    const Jet phase = Jet::variable(order) * (a / lambda);
    const Jet base = cos(phase) - sin(phase) * (x / a);
    return log(base) * (-lambda);
}

std::vector<double> derivatives_at_zero(const Jet& j, int max_order) {
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = j.derivative(p);
    }
    return out;
}

std::vector<CentralMomentPolynomial> build_central_moments() {
    using V = CentralMomentPolynomial;
    const auto x = Polynomial<3>::variable(V::X);
    const auto s_over_lambda =
        (x * x + Polynomial<3>::variable(V::A2)) * Polynomial<3>::variable(V::InvLambda);

    std::vector<Polynomial<3>> mu;
    mu.push_back(Polynomial<3>::constant(Rational{1}));
    mu.emplace_back();
    for (int p = 1; p < kMaxMomentOrder; ++p) {
        Polynomial<3> inner = Rational{p} * mu[static_cast<std::size_t>(p - 1)];
        inner += mu[static_cast<std::size_t>(p)].derivative(V::X);
        mu.push_back(s_over_lambda * inner);
    }
    std::vector<CentralMomentPolynomial> out;
    out.reserve(mu.size());
    for (std::size_t p = 0; p < mu.size(); ++p) {
        out.emplace_back(static_cast<int>(p), std::move(mu[p]));
    }
    return out;
}

}  // namespace

std::vector<double> raw_moments_jet(const OperatorParams& params, double x, int max_order) {
    check_order(max_order);
    const std::size_t order = static_cast<std::size_t>(std::max(max_order, 2));
    return derivatives_at_zero(exp(log_mgf_jet(params, x, order)), max_order);
}

std::vector<double> central_moments_jet(const OperatorParams& params, double x, int max_order) {
    check_order(max_order);
    const std::size_t order = static_cast<std::size_t>(std::max(max_order, 2));
    // Combine the −xθ shift before exponentiating so the first-order terms
    // cancel inside the exponent.
    Jet exponent = log_mgf_jet(params, x, order);
    exponent[1] -= x;
    return derivatives_at_zero(exp(exponent), max_order);
}

CentralMomentPolynomial::CentralMomentPolynomial(int order, Polynomial<3> poly)
    : order_(order), poly_(std::move(poly)) {}

Rational CentralMomentPolynomial::coefficient(int i, int j, int k) const {
    return poly_.coefficient({i, j, k});
}

double CentralMomentPolynomial::evaluate(const OperatorParams& params, double x) const {
    const std::array<double, 3> values{x, params.a() * params.a(), 1.0 / params.lambda()};
    return poly_.evaluate(values);
}

std::string CentralMomentPolynomial::to_string() const {
    return poly_.to_string({"x", "a^2", "(1/lambda)"});
}

const CentralMomentPolynomial& central_moment_symbolic(int p) {
    static const std::vector<CentralMomentPolynomial> table = build_central_moments();
    check_order(p);
    return table[static_cast<std::size_t>(p)];
}

double asymptotic_raw_moment(int p, const OperatorParams& params, double x) {
    if (p < 0) {
        throw DomainError("asymptotic_raw_moment: p must be non-negative");
    }
    const double lambda = params.lambda();
    const double a2 = params.a() * params.a();
    const double q = p;
    const double c1 = q * (q - 1.0) / (2.0 * lambda);
    const double lead = c1 + q * (q - 1.0) * (q - 2.0) * (3.0 * q - 1.0) / (24.0 * lambda * lambda);
    const double mid = c1 + q * (q - 1.0) * (q - 2.0) * (3.0 * q - 5.0) / (12.0 * lambda * lambda);
    const double tail = q * (q - 1.0) * (q - 2.0) * (q - 3.0) / (8.0 * lambda * lambda);

    // x^{p−2} and x^{p−4} only appear with vanishing brackets when the
    // exponent is negative, so such terms are skipped rather than evaluated.
    const auto power_term = [&](double coef, int exponent) {
        if (coef == 0.0) {
            return 0.0;
        }
        if (exponent < 0 && x == 0.0) {
            throw DomainError("asymptotic_raw_moment: negative power of x at x = 0");
        }
        return coef * std::pow(x, exponent);
    };
    return std::pow(x, p) + power_term(lead, p) + a2 * power_term(mid, p - 2) +
           a2 * a2 * power_term(tail, p - 4);
}

}  // namespace expop
