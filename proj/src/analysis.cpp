#include "expop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "expop/errors.hpp"
#include "expop/moments.hpp"
#include "expop/operators.hpp"

namespace expop {

namespace {

double half_s(const OperatorParams& params, double x) {
    return 0.5 * (params.a() * params.a() + x * x);
}

double log_add(double l1, double l2) {
    if (l1 < l2) {
        std::swap(l1, l2);
    }
    if (l1 == -std::numeric_limits<double>::infinity()) {
        return l1;
    }
    return l1 + std::log1p(std::exp(l2 - l1));
}

}  // namespace

double voronovskaja_residual(const OperatorParams& params, const SmoothFunction& f, double x,
                             const QuadConfig& cfg) {
    const double tf = apply_T(params, f.f, x, cfg);
    return params.lambda() * (tf - f.f(x)) - half_s(params, x) * f.diff(2, x);
}

SimultaneousCheck simultaneous_check(const OperatorParams& params, const SmoothFunction& f,
                                     double x, int p, const QuadConfig& cfg) {
    if (p < 0 || p > kMaxDerivativeOrder) {
        throw DerivativeOrderUnsupported("simultaneous_check: p=" + std::to_string(p));
    }
    const double tp = apply_T_derivative(params, f.f, x, p, cfg);
    const double fp = f.diff(p, x);
    const double lhs = params.lambda() * (tp - fp);
    const double rhs = 0.5 * p * (p - 1) * fp + p * x * f.diff(p + 1, x) +
                       half_s(params, x) * f.diff(p + 2, x);
    return {lhs, rhs};
}

double scaling_limit_residual(double m, double a, const GrowthBoundedFunction& f, double x,
                              double lambda, const QuadConfig& cfg) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("scaling_limit_residual: x must be positive");
    }
    const OperatorParams params(m, a);
    const double scaled = apply_T(params, f.rescaled(lambda), lambda * x, cfg);
    return std::fabs(scaled - apply_post_widder(m, f, x, cfg));
}

double tail_mass(const OperatorParams& params, double x, double delta, double growth_rate,
                 const QuadConfig& cfg) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw DomainError("tail_mass: delta must be non-negative");
    }
    if (!std::isfinite(growth_rate) || growth_rate < 0.0) {
        throw DomainError("tail_mass: N must be non-negative");
    }
    GrowthBoundedFunction weight;
    weight.eval = [growth_rate](double nu) { return std::exp(growth_rate * std::fabs(nu)); };
    weight.N = growth_rate;
    weight.label = "exp(N|nu|)";
    if (!admissible(params, weight, x)) {
        throw GrowthTooFast("tail_mass: N=" + std::to_string(growth_rate) +
                            " exceeds the kernel decay");
    }
    const KernelSlice slice(params, x);
    const LogFunction log_integrand = [&](double nu) {
        return slice(nu) + growth_rate * std::fabs(nu);
    };
    const double scale = kernel_location_scale(params, x).scale;
    double log_total = -std::numeric_limits<double>::infinity();
    for (const Direction dir : {Direction::Left, Direction::Right}) {
        const double start = dir == Direction::Left ? x - delta : x + delta;
        const Window w = expand_half_line(log_integrand, start, dir, scale, cfg);
        const QuadResult r = integrate_exp_log(log_integrand, w, cfg);
        if (r.mantissa > 0.0) {
            log_total = log_add(log_total, r.log_abs_value());
        }
    }
    return std::exp(log_total);
}

ModulusBoundCheck usual_modulus_bound_check(const OperatorParams& params, const SmoothFunction& f,
                                            double third_derivative_bound, double x,
                                            const QuadConfig& cfg) {
    if (!(third_derivative_bound >= 0.0) || !std::isfinite(third_derivative_bound)) {
        throw DomainError("third-derivative bound must be non-negative");
    }
    const double lambda = params.lambda();
    const double a2 = params.a() * params.a();
    const QuadResult tf = apply_T_detailed(params, f.f, x, cfg);
    const double lhs =
        std::fabs(lambda * (tf.value - f.f(x)) - half_s(params, x) * f.diff(2, x));
    const double omega = third_derivative_bound / std::sqrt(lambda);
    const double bracket = 1.0 + (3.0 * (lambda + 2.0) * x * x + (3.0 * lambda + 2.0) * a2) / lambda;
    const double rhs = 2.0 * (a2 + x * x) * omega * bracket;
    const double slack = lambda * (tf.est_error + cfg.rel_tol * std::fabs(tf.value));
    return {lhs, rhs, slack, lhs <= rhs + slack};
}

double xi_factor(const OperatorParams& params, double x) {
    const double l = params.lambda();
    const double a2 = params.a() * params.a();
    const double x2 = x * x;
    return 5.0 * x2 * x2 * (3.0 * l * l + 26.0 * l + 24.0) +
           10.0 * a2 * (3.0 * l * l + 16.0 * l + 12.0) * x2 +
           a2 * a2 * (15.0 * l * l + 30.0 * l + 16.0);
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DomainError("loglog_slope: need at least two paired points");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(std::fabs(xs[i]));
        const double ly = std::log(std::fabs(ys[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string AParameter::label() const {
    if (post_widder) {
        return "PW";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<double> XGrid::points() const {
    std::vector<double> pts;
    if (count <= 1) {
        pts.push_back(lo);
        return pts;
    }
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        pts.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
    }
    return pts;
}

void ExperimentSpec::validate() const {
    if (function == "custom") {
        if (!custom) {
            throw DomainError("experiment: custom function requested but none supplied");
        }
    } else {
        const auto& names = function_names();
        if (std::find(names.begin(), names.end(), function) == names.end() || function == "exp") {
            throw DomainError("experiment: unknown function '" + function + "'");
        }
    }
    if (a_ladder.empty() || lambda_ladder.empty()) {
        throw DomainError("experiment: a and lambda ladders must be non-empty");
    }
    for (const double l : lambda_ladder) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw DomainError("experiment: lambda values must be positive");
        }
    }
    bool any_pw = false;
    for (const auto& a : a_ladder) {
        any_pw = any_pw || a.post_widder;
        if (!a.post_widder && (!(a.value > 0.0) || !std::isfinite(a.value))) {
            throw DomainError("experiment: a values must be positive");
        }
    }
    if (!std::isfinite(x_grid.lo) || !std::isfinite(x_grid.hi) || x_grid.lo > x_grid.hi ||
        x_grid.count < 1) {
        throw DomainError("experiment: x grid needs finite lo <= hi and count >= 1");
    }
    if (any_pw && !(x_grid.lo > 0.0)) {
        throw DomainError("experiment: Post-Widder rows need an x grid with lo > 0");
    }
    quad.validate();
}

std::optional<double> ConvergenceReport::sup_error(const AParameter& a, double lambda) const {
    for (const auto& s : summary) {
        if (s.a == a && s.lambda == lambda) {
            return s.sup_error;
        }
    }
    return std::nullopt;
}

ConvergenceReport run_convergence_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const SmoothFunction fn = spec.custom ? *spec.custom : make_function(spec.function);
    const std::vector<double> xs = spec.x_grid.points();

    ConvergenceReport report;
    for (const auto& a : spec.a_ladder) {
        for (const double lambda : spec.lambda_ladder) {
            std::optional<double> sup;
            for (const double x : xs) {
                ReportRow row;
                row.function = spec.function;
                row.a = a;
                row.lambda = lambda;
                row.x = x;
                row.f_value = fn.f(x);
                try {
                    const double v = a.post_widder
                                         ? apply_post_widder(lambda, fn.f, x, spec.quad)
                                         : apply_T(OperatorParams(lambda, a.value), fn.f, x,
                                                   spec.quad);
                    row.op_value = v;
                    row.abs_error = std::fabs(v - row.f_value);
                    sup = std::max(sup.value_or(0.0), *row.abs_error);
                } catch (const Error& e) {
                    row.status = std::string(e.kind());
                }
                report.rows.push_back(std::move(row));
            }
            report.summary.push_back({spec.function, a, lambda, sup});
        }
    }
    return report;
}

}  // namespace expop
