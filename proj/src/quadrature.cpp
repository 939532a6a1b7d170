#include "expop/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "expop/errors.hpp"

namespace expop {

namespace {

constexpr std::size_t kOrder = 20;
constexpr std::size_t kInitialPanels = 16;
constexpr std::size_t kWindowSamples = 257;
constexpr int kMaxDepth = 60;
constexpr double kNoiseUlps = 1e4;
constexpr double kStartHalfWidth = 8.0;
const double kMaxHalfWidth = std::ldexp(1.0, 40);

struct GaussLegendreRule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

GaussLegendreRule make_rule() {
    GaussLegendreRule rule;
    const int n = static_cast<int>(kOrder);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre() {
    static const GaussLegendreRule rule = make_rule();
    return rule;
}

// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct PanelSum {
    double value = 0.0;
    double abs = 0.0;
};

class WeightedIntegrator {
public:
    WeightedIntegrator(const LogFunction& log_weight, const RealFunction& factor,
                       const QuadConfig& cfg)
        : log_weight_(log_weight), factor_(factor), cfg_(cfg) {}

    QuadResult run(Window window) {
        const auto& rule = gauss_legendre();
        const double width = window.hi - window.lo;
        const double panel_width = width / kInitialPanels;

        // Shift by the largest sampled log weight before exponentiating.
        std::vector<double> samples(kInitialPanels * kOrder);
        shift_ = -std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < kInitialPanels; ++p) {
            const double a = window.lo + p * panel_width;
            for (std::size_t k = 0; k < kOrder; ++k) {
                const double t = a + 0.5 * panel_width * (rule.nodes[k] + 1.0);
                const double lw = log_weight_(t);
                if (std::isnan(lw)) {
                    throw DomainError("integrand log-weight is NaN at " + std::to_string(t));
                }
                samples[p * kOrder + k] = lw;
                shift_ = std::max(shift_, lw);
            }
        }

        QuadResult result;
        result.window = window;
        if (shift_ == -std::numeric_limits<double>::infinity()) {
            result.log_scale = shift_;
            return result;
        }

        std::vector<PanelSum> initial(kInitialPanels);
        std::vector<Window> bounds(kInitialPanels);
        double total = 0.0;
        double total_abs = 0.0;
        for (std::size_t p = 0; p < kInitialPanels; ++p) {
            const double a = window.lo + p * panel_width;
            const double b = (p + 1 == kInitialPanels) ? window.hi : a + panel_width;
            bounds[p] = {a, b};
            initial[p] = panel_from_samples(a, b, &samples[p * kOrder]);
            total += initial[p].value;
            total_abs += initial[p].abs;
        }
        evaluations_ = kInitialPanels;

        // The tolerance depends on the integral itself; repeat with the
        // refined estimate whenever the crude one set it too loosely.
        double estimate = total;
        PassResult pass;
        for (int attempt = 0; attempt < 3; ++attempt) {
            const double tol = tolerance(estimate, total_abs);
            pass = refine_all(bounds, initial, width, tol);
            estimate = pass.value;
            if (tolerance(estimate, pass.abs) >= 0.5 * tol) {
                break;
            }
        }

        const double scale = std::exp(shift_);
        result.mantissa = pass.value;
        result.log_scale = shift_;
        result.value = pass.value * scale;
        result.est_error = pass.error * scale;
        result.abs_integral = pass.abs * scale;
        result.panels_used = evaluations_;
        return result;
    }

private:
    struct PassResult {
        double value = 0.0;
        double abs = 0.0;
        double error = 0.0;
    };

    [[nodiscard]] double tolerance(double estimate, double abs_estimate) const {
        const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * abs_estimate;
        return std::max({cfg_.rel_tol * std::fabs(estimate), cfg_.abs_tol, roundoff});
    }

    PassResult refine_all(const std::vector<Window>& bounds, const std::vector<PanelSum>& initial,
                          double width, double tol) {
        CompensatedSum value;
        CompensatedSum abs;
        double error = 0.0;
        for (std::size_t p = 0; p < bounds.size(); ++p) {
            refine(bounds[p].lo, bounds[p].hi, initial[p], tol / width, 0, value, abs, error);
        }
        return {value.value(), abs.value(), error};
    }

    void refine(double a, double b, const PanelSum& whole, double tol_density, int depth,
                CompensatedSum& value, CompensatedSum& abs, double& error,
                double parent_diff = std::numeric_limits<double>::infinity()) {
        const double mid = 0.5 * (a + b);
        const PanelSum left = panel(a, mid);
        const PanelSum right = panel(mid, b);
        const double diff = std::fabs(left.value + right.value - whole.value);
        const double eps = std::numeric_limits<double>::epsilon();
        const double roundoff = 64.0 * eps * (left.abs + right.abs);
        // Halving no longer helps and the difference is at the level of the
        // noise in the log-weight evaluation: further refinement is futile.
        const bool stagnant = diff > 0.25 * parent_diff && diff <= kNoiseUlps * eps * (left.abs + right.abs);
        if (diff <= std::max(tol_density * (b - a), roundoff) || stagnant) {
            value.add(left.value);
            value.add(right.value);
            abs.add(left.abs);
            abs.add(right.abs);
            error += diff;
            return;
        }
        if (depth >= kMaxDepth) {
            throw NotConverged("quadrature: panel width underflow near " + std::to_string(a));
        }
        refine(a, mid, left, tol_density, depth + 1, value, abs, error, diff);
        refine(mid, b, right, tol_density, depth + 1, value, abs, error, diff);
    }

    PanelSum panel(double a, double b) {
        if (++evaluations_ > cfg_.max_panels) {
            throw NotConverged("quadrature: panel budget of " + std::to_string(cfg_.max_panels) +
                               " exhausted");
        }
        const auto& rule = gauss_legendre();
        std::array<double, kOrder> lw{};
        for (std::size_t k = 0; k < kOrder; ++k) {
            lw[k] = log_weight_(a + 0.5 * (b - a) * (rule.nodes[k] + 1.0));
        }
        return panel_from_samples(a, b, lw.data());
    }

    PanelSum panel_from_samples(double a, double b, const double* lw) const {
        const auto& rule = gauss_legendre();
        const double half = 0.5 * (b - a);
        CompensatedSum value;
        CompensatedSum abs;
        for (std::size_t k = 0; k < kOrder; ++k) {
            if (lw[k] == -std::numeric_limits<double>::infinity()) {
                continue;
            }
            const double w = std::exp(lw[k] - shift_);
            if (w == 0.0) {
                continue;  // the factor may overflow where the weight underflows
            }
            const double t = a + half * (rule.nodes[k] + 1.0);
            const double term = w * factor_(t);
            if (!std::isfinite(term)) {
                throw DomainError("non-finite integrand at " + std::to_string(t));
            }
            value.add(rule.weights[k] * term);
            abs.add(rule.weights[k] * std::fabs(term));
        }
        return {half * value.value(), half * abs.value()};
    }

    const LogFunction& log_weight_;
    const RealFunction& factor_;
    const QuadConfig& cfg_;
    double shift_ = 0.0;
    std::size_t evaluations_ = 0;
};

void check_window(Window window) {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.lo < window.hi)) {
        throw DomainError("quadrature window must be finite with lo < hi");
    }
}

// Largest log value over `count` equispaced points on [lo, hi].
double sampled_max(const LogFunction& f, double lo, double hi, double running) {
    for (std::size_t i = 0; i < kWindowSamples; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / (kWindowSamples - 1);
        const double v = f(t);
        if (v > running) {
            running = v;
        }
    }
    return running;
}

bool endpoint_ok(const LogFunction& f, double t, double max_log, double margin) {
    const double v = f(t);
    return v <= max_log - margin;  // false for NaN
}

}  // namespace

double QuadConfig::margin() const {
    return window_margin.value_or(5.0 + std::log(1.0 / rel_tol));
}

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
        throw DomainError("rel_tol must be positive");
    }
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
        throw DomainError("abs_tol must be positive");
    }
    if (max_panels < 16) {
        throw DomainError("max_panels must be at least 16");
    }
    if (window_margin && !(*window_margin > 0.0)) {
        throw DomainError("window_margin must be positive");
    }
}

double QuadResult::log_abs_value() const {
    return std::log(std::fabs(mantissa)) + log_scale;
}

Window expand_window(const LogFunction& log_integrand, double center, double scale,
                     const QuadConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(center) || !(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("expand_window: need finite center and positive scale");
    }
    double max_log = log_integrand(center);
    if (!std::isfinite(max_log)) {
        throw DomainError("expand_window: log-integrand not finite at the center");
    }
    const double margin = cfg.margin();
    double left = kStartHalfWidth * scale;
    double right = kStartHalfWidth * scale;
    const double limit = kMaxHalfWidth * scale;
    while (true) {
        max_log = sampled_max(log_integrand, center - left, center + right, max_log);
        const bool left_ok = endpoint_ok(log_integrand, center - left, max_log, margin);
        const bool right_ok = endpoint_ok(log_integrand, center + right, max_log, margin);
        if (left_ok && right_ok) {
            return {center - left, center + right};
        }
        if (!left_ok) {
            left *= 2.0;
        }
        if (!right_ok) {
            right *= 2.0;
        }
        if (left > limit || right > limit) {
            throw WindowNotFound("no decaying window around " + std::to_string(center) +
                                 " within 2^40 scale units");
        }
    }
}

Window expand_half_line(const LogFunction& log_integrand, double start, Direction dir,
                        double scale, const QuadConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(start) || !(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("expand_half_line: need finite start and positive scale");
    }
    const double sign = dir == Direction::Right ? 1.0 : -1.0;
    const double margin = cfg.margin();
    double width = kStartHalfWidth * scale;
    const double limit = kMaxHalfWidth * scale;
    double max_log = -std::numeric_limits<double>::infinity();
    while (true) {
        const double end = start + sign * width;
        max_log = sampled_max(log_integrand, start, end, max_log);
        if (max_log == -std::numeric_limits<double>::infinity() ||
            endpoint_ok(log_integrand, end, max_log, margin)) {
            return dir == Direction::Right ? Window{start, end} : Window{end, start};
        }
        width *= 2.0;
        if (width > limit) {
            throw WindowNotFound("no decaying half-line window from " + std::to_string(start));
        }
    }
}

QuadResult integrate_exp_log(const LogFunction& log_integrand, Window window,
                             const QuadConfig& cfg) {
    static const RealFunction one = [](double) { return 1.0; };
    return integrate_weighted(log_integrand, one, window, cfg);
}

QuadResult integrate_weighted(const LogFunction& log_weight, const RealFunction& factor,
                              Window window, const QuadConfig& cfg) {
    cfg.validate();
    check_window(window);
    return WeightedIntegrator(log_weight, factor, cfg).run(window);
}

}  // namespace expop
