#pragma once

#include <cstddef>
#include <vector>

namespace expop {

/// Truncated Taylor series c₀ + c₁θ + … + c_P θ^P about θ = 0. All
/// arithmetic truncates at order P; binary operations require equal orders.
class Jet {
public:
    explicit Jet(std::size_t order);

    static Jet constant(double value, std::size_t order);
    /// θ itself.
    static Jet variable(std::size_t order);

    [[nodiscard]] std::size_t order() const noexcept { return coef_.size() - 1; }
    [[nodiscard]] double operator[](std::size_t k) const { return coef_.at(k); }
    double& operator[](std::size_t k) { return coef_.at(k); }
    [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coef_; }

    /// k-th derivative at θ = 0, i.e. k!·c_k.
    [[nodiscard]] double derivative(std::size_t k) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b);

private:
    std::vector<double> coef_;
};

Jet exp(const Jet& a);
/// Requires a[0] > 0.
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
/// a^r for real r via exp(r·log a); requires a[0] > 0.
Jet pow(const Jet& a, double r);

}  // namespace expop
