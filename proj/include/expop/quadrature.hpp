#pragma once

// Integration of exp(log-integrand) over windows of the real line. Every sum
// is accumulated relative to the largest sampled log value, so integrands
// whose magnitude is far outside binary64 range are handled through the
// separate log scale of the result.

#include <cstddef>
#include <functional>
#include <optional>

namespace expop {

using LogFunction = std::function<double(double)>;
using RealFunction = std::function<double(double)>;

struct QuadConfig {
    double rel_tol = 1e-10;
    /// Absolute tolerance, measured relative to the peak of the integrand
    /// (i.e. in units of exp(log_scale)).
    double abs_tol = 1e-14;
    std::size_t max_panels = std::size_t{1} << 16;
    /// Log units the window endpoints must lie below the sampled maximum.
    /// Defaults to 5 + ln(1/rel_tol).
    std::optional<double> window_margin;

    [[nodiscard]] double margin() const;
    /// Throws DomainError if any field is out of range.
    void validate() const;
};

struct Window {
    double lo;
    double hi;
};

struct QuadResult {
    double value = 0.0;      ///< mantissa · e^{log_scale}; may be ±inf or 0 if out of range
    double mantissa = 0.0;
    double log_scale = 0.0;
    double est_error = 0.0;  ///< in the same units as value
    double abs_integral = 0.0;  ///< ∫|integrand|, same units as value
    std::size_t panels_used = 0;
    Window window{0.0, 0.0};

    /// ln|value|; finite even when value itself under- or overflows.
    [[nodiscard]] double log_abs_value() const;
};

/// Symmetric search: starting from [center ± 8·scale], doubles each side's
/// half-width until the log-integrand at that endpoint lies `margin` below
/// the largest value sampled inside. Throws WindowNotFound once a half-width
/// exceeds 2^40·scale.
Window expand_window(const LogFunction& log_integrand, double center, double scale,
                     const QuadConfig& cfg);

enum class Direction { Left, Right };

/// One-sided variant: the window is [start, end] (Right) or [end, start]
/// (Left), grown from 8·scale under the same endpoint criterion.
Window expand_half_line(const LogFunction& log_integrand, double start, Direction dir,
                        double scale, const QuadConfig& cfg);

/// ∫ exp(log_integrand) over the window.
QuadResult integrate_exp_log(const LogFunction& log_integrand, Window window,
                             const QuadConfig& cfg);

/// ∫ exp(log_weight)·factor over the window, for a real (possibly sign
/// changing) factor. Composite Gauss–Legendre panels with dyadic refinement;
/// a panel is accepted once it agrees with the sum over its halves.
QuadResult integrate_weighted(const LogFunction& log_weight, const RealFunction& factor,
                              Window window, const QuadConfig& cfg);

}  // namespace expop
