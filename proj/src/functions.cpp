#include "expop/functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expop/errors.hpp"

namespace expop {

double GrowthBoundedFunction::log_envelope(double nu) const {
    const double an = std::fabs(nu);
    double v = std::log(K) + N * an;
    if (degree > 0) {
        v += degree * std::log1p(an);
    }
    return v;
}

GrowthBoundedFunction GrowthBoundedFunction::rescaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("rescaled: lambda must be positive");
    }
    GrowthBoundedFunction g;
    g.eval = [inner = eval, lambda](double nu) { return inner(nu / lambda); };
    if (log_eval) {
        g.log_eval = [inner = log_eval, lambda](double nu) { return inner(nu / lambda); };
    }
    // (1 + |ν|/λ)^d ≤ max(1, λ^{−d}) (1 + |ν|)^d
    g.K = K * (lambda < 1.0 ? std::pow(lambda, -degree) : 1.0);
    g.N = N / lambda;
    g.degree = degree;
    g.label = label + "(nu/" + std::to_string(lambda) + ")";
    return g;
}

double SmoothFunction::diff(int k, double x) const {
    if (k < 0 || k > max_order) {
        throw DomainError("derivative order " + std::to_string(k) + " not available for " +
                          f.label);
    }
    return derivative(k, x);
}

SmoothFunction monomial(int p) {
    if (p < 0) {
        throw DomainError("monomial degree must be non-negative");
    }
    SmoothFunction s;
    s.f.eval = [p](double nu) { return std::pow(nu, p); };
    s.f.K = 1.0;
    s.f.N = 0.0;
    s.f.degree = p;
    s.f.label = "e" + std::to_string(p);
    s.derivative = [p](int k, double x) {
        if (k > p) {
            return 0.0;
        }
        double c = 1.0;
        for (int i = 0; i < k; ++i) {
            c *= p - i;
        }
        return c * std::pow(x, p - k);
    };
    s.max_order = 64;
    return s;
}

SmoothFunction x_sin_x() {
    SmoothFunction s;
    s.f.eval = [](double nu) { return nu * std::sin(nu); };
    s.f.degree = 1;
    s.f.label = "xsinx";
    // (x sin x)^{(k)} = x sin(x + kπ/2) + k sin(x + (k−1)π/2)
    s.derivative = [](int k, double x) {
        const double h = 0.5 * std::numbers::pi;
        return x * std::sin(x + k * h) + k * std::sin(x + (k - 1) * h);
    };
    s.max_order = 64;
    return s;
}

SmoothFunction x_cos_pi_x() {
    SmoothFunction s;
    s.f.eval = [](double nu) { return -0.5 * nu * std::cos(std::numbers::pi * nu); };
    s.f.K = 0.5;
    s.f.degree = 1;
    s.f.label = "xcospix";
    s.derivative = [](int k, double x) {
        const double pi = std::numbers::pi;
        const double h = 0.5 * pi;
        const double dk = std::pow(pi, k) * std::cos(pi * x + k * h);
        const double dk1 = k > 0 ? std::pow(pi, k - 1) * std::cos(pi * x + (k - 1) * h) : 0.0;
        return -0.5 * (x * dk + k * dk1);
    };
    s.max_order = 64;
    return s;
}

SmoothFunction gauss() {
    SmoothFunction s;
    s.f.eval = [](double nu) { return std::exp(-nu * nu); };
    s.f.label = "gauss";
    // d^k e^{−x²} = (−1)^k H_k(x) e^{−x²}, physicists' Hermite polynomials.
    s.derivative = [](int k, double x) {
        double h0 = 1.0;
        double h1 = 2.0 * x;
        double hk = k == 0 ? h0 : h1;
        for (int n = 1; n < k; ++n) {
            hk = 2.0 * x * h1 - 2.0 * n * h0;
            h0 = h1;
            h1 = hk;
        }
        return (k % 2 == 0 ? 1.0 : -1.0) * hk * std::exp(-x * x);
    };
    s.max_order = 64;
    return s;
}

SmoothFunction exp_theta(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("theta must be finite");
    }
    SmoothFunction s;
    s.f.eval = [theta](double nu) { return std::exp(theta * nu); };
    s.f.log_eval = [theta](double nu) { return theta * nu; };
    s.f.N = std::fabs(theta);
    s.f.label = "exp";
    s.derivative = [theta](int k, double x) { return std::pow(theta, k) * std::exp(theta * x); };
    s.max_order = 64;
    return s;
}

const std::vector<std::string>& function_names() {
    static const std::vector<std::string> names = {"e0", "e1", "e2",    "e3",      "e4",
                                                   "e5", "e6", "xsinx", "xcospix", "gauss",
                                                   "exp"};
    return names;
}

SmoothFunction make_function(std::string_view name, std::optional<double> theta) {
    if (name.size() == 2 && name[0] == 'e' && name[1] >= '0' && name[1] <= '6') {
        return monomial(name[1] - '0');
    }
    if (name == "xsinx") {
        return x_sin_x();
    }
    if (name == "xcospix") {
        return x_cos_pi_x();
    }
    if (name == "gauss") {
        return gauss();
    }
    if (name == "exp") {
        if (!theta) {
            throw DomainError("function 'exp' needs theta");
        }
        return exp_theta(*theta);
    }
    throw DomainError("unknown function '" + std::string(name) + "'");
}

}  // namespace expop
