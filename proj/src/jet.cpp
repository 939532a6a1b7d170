#include "expop/jet.hpp"

#include <cmath>
#include <utility>

#include "expop/errors.hpp"

namespace expop {

namespace {

void check_same_order(const Jet& a, const Jet& b) {
    if (a.order() != b.order()) {
        throw DomainError("jet orders differ");
    }
}

// Simultaneous recurrences for sin and cos of a series.
std::pair<Jet, Jet> sin_cos(const Jet& a) {
    const std::size_t n = a.order();
    Jet s(n);
    Jet c(n);
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (std::size_t m = 1; m <= n; ++m) {
        double ss = 0.0;
        double cc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) {
            ss += static_cast<double>(k) * a[k] * c[m - k];
            cc += static_cast<double>(k) * a[k] * s[m - k];
        }
        s[m] = ss / static_cast<double>(m);
        c[m] = -cc / static_cast<double>(m);
    }
    return {s, c};
}

}  // namespace

Jet::Jet(std::size_t order) : coef_(order + 1, 0.0) {}

Jet Jet::constant(double value, std::size_t order) {
    Jet j(order);
    j.coef_[0] = value;
    return j;
}

Jet Jet::variable(std::size_t order) {
    Jet j(order);
    if (order >= 1) {
        j.coef_[1] = 1.0;
    }
    return j;
}

double Jet::derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) {
        f *= static_cast<double>(i);
    }
    return f * coef_.at(k);
}

Jet& Jet::operator+=(const Jet& o) {
    check_same_order(*this, o);
    for (std::size_t k = 0; k < coef_.size(); ++k) {
        coef_[k] += o.coef_[k];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_same_order(*this, o);
    for (std::size_t k = 0; k < coef_.size(); ++k) {
        coef_[k] -= o.coef_[k];
    }
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& c : coef_) {
        c *= s;
    }
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    check_same_order(a, b);
    const std::size_t n = a.order();
    Jet r(n);
    for (std::size_t m = 0; m <= n; ++m) {
        double sum = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            sum += a[k] * b[m - k];
        }
        r[m] = sum;
    }
    return r;
}

Jet exp(const Jet& a) {
    const std::size_t n = a.order();
    Jet r(n);
    r[0] = std::exp(a[0]);
    for (std::size_t m = 1; m <= n; ++m) {
        double sum = 0.0;
        for (std::size_t k = 1; k <= m; ++k) {
            sum += static_cast<double>(k) * a[k] * r[m - k];
        }
        r[m] = sum / static_cast<double>(m);
    }
    return r;
}

Jet log(const Jet& a) {
    if (!(a[0] > 0.0)) {
        throw DomainError("jet log needs a positive constant term");
    }
    const std::size_t n = a.order();
    Jet r(n);
    r[0] = std::log(a[0]);
    for (std::size_t m = 1; m <= n; ++m) {
        double sum = 0.0;
        for (std::size_t k = 1; k < m; ++k) {
            sum += static_cast<double>(k) * r[k] * a[m - k];
        }
        r[m] = (a[m] - sum / static_cast<double>(m)) / a[0];
    }
    return r;
}

Jet sin(const Jet& a) { return sin_cos(a).first; }
Jet cos(const Jet& a) { return sin_cos(a).second; }

Jet pow(const Jet& a, double r) { return exp(log(a) * r); }

}  // namespace expop
