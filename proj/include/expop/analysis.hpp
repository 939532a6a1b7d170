#pragma once

// Numerical checks of the limit theorems and error bounds for T_{λ,a}, and
// the convergence experiments comparing family members against f.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expop/functions.hpp"
#include "expop/kernel.hpp"
#include "expop/quadrature.hpp"

namespace expop {

/// λ[(T f)(x) − f(x)] − (a² + x²)/2 · f″(x).
double voronovskaja_residual(const OperatorParams& params, const SmoothFunction& f, double x,
                             const QuadConfig& cfg = {});

struct SimultaneousCheck {
    double lhs;  ///< λ[(T^{(p)} f)(x) − f^{(p)}(x)]
    double rhs;  ///< p(p−1)/2 f^{(p)} + p x f^{(p+1)} + (a² + x²)/2 f^{(p+2)}
};

/// Requires f derivatives up to p + 2; 0 ≤ p ≤ 3.
SimultaneousCheck simultaneous_check(const OperatorParams& params, const SmoothFunction& f,
                                     double x, int p, const QuadConfig& cfg = {});

/// |(T_{m,a} f(·/λ))(λx) − (P_m f)(x)| for x > 0.
double scaling_limit_residual(double m, double a, const GrowthBoundedFunction& f, double x,
                              double lambda, const QuadConfig& cfg = {});

/// ∫_{|ν−x| ≥ δ} κ(x, ν) e^{N|ν|} dν, each tail integrated on its own
/// half-line window so that masses far below the kernel peak stay resolved.
double tail_mass(const OperatorParams& params, double x, double delta, double growth_rate,
                 const QuadConfig& cfg = {});

struct ModulusBoundCheck {
    double lhs;        ///< |λ[(Tf)(x) − f(x)] − (a² + x²)/2 f″(x)|
    double rhs_upper;  ///< bound with ω(f″, δ) replaced by M₃·δ
    double slack;      ///< λ times the quadrature error allowance on (Tf)(x)
    bool ok;           ///< lhs ≤ rhs_upper + slack
};

/// `third_derivative_bound` must satisfy M₃ ≥ sup|f‴|.
ModulusBoundCheck usual_modulus_bound_check(const OperatorParams& params, const SmoothFunction& f,
                                            double third_derivative_bound, double x,
                                            const QuadConfig& cfg = {});

/// Ξ(a, λ, x) = 5x⁴(3λ² + 26λ + 24) + 10a²(3λ² + 16λ + 12)x² + a⁴(15λ² + 30λ + 16),
/// equal to λ⁵ μ₆(x)/(a² + x²).
double xi_factor(const OperatorParams& params, double x);

/// Least-squares slope of ln|y| against ln x.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// A rung of the a-ladder: a positive value, or the a → 0 (Post–Widder) limit.
struct AParameter {
    bool post_widder = false;
    double value = 0.0;

    static AParameter of(double a) { return {false, a}; }
    static AParameter pw() { return {true, 0.0}; }
    [[nodiscard]] std::string label() const;
    friend bool operator==(const AParameter&, const AParameter&) = default;
};

struct XGrid {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    [[nodiscard]] std::vector<double> points() const;
    friend bool operator==(const XGrid&, const XGrid&) = default;
};

struct ExperimentSpec {
    /// Registry name (xsinx, xcospix, gauss, …) or "custom".
    std::string function;
    /// Required when function == "custom".
    std::optional<SmoothFunction> custom;
    std::vector<AParameter> a_ladder;
    std::vector<double> lambda_ladder;
    XGrid x_grid;
    QuadConfig quad;

    void validate() const;
};

struct ReportRow {
    std::string function;
    AParameter a;
    double lambda = 0.0;
    double x = 0.0;
    std::optional<double> op_value;  ///< empty when the cell failed
    double f_value = 0.0;
    std::optional<double> abs_error;
    std::string status = "ok";  ///< "ok" or the error kind
    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SummaryRow {
    std::string function;
    AParameter a;
    double lambda = 0.0;
    std::optional<double> sup_error;  ///< empty if no cell in the group succeeded
    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;
    std::vector<SummaryRow> summary;
    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;

    /// sup-error of the (a, λ) group, if present and available.
    [[nodiscard]] std::optional<double> sup_error(const AParameter& a, double lambda) const;
};

/// Rows are ordered by (a, λ, x) following the ladders; per-cell failures
/// are recorded in the row status instead of aborting the run.
ConvergenceReport run_convergence_experiment(const ExperimentSpec& spec);

}  // namespace expop
