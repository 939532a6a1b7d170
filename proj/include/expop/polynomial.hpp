#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace expop {

using Rational = boost::multiprecision::cpp_rational;

template <std::size_t N>
class Polynomial {
public:
    using Exponents = std::array<int, N>;
    using Terms = std::map<Exponents, Rational>;

    Polynomial() = default;

    static Polynomial constant(const Rational& c) {
        Polynomial p;
        p.add_term(Exponents{}, c);
        return p;
    }

    static Polynomial variable(std::size_t k) {
        Exponents e{};
        e[k] = 1;
        Polynomial p;
        p.add_term(e, Rational{1});
        return p;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(const Exponents& e) const {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Rational{0} : it->second;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e{};
                for (std::size_t k = 0; k < N; ++k) {
                    e[k] = ea[k] + eb[k];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial r;
        for (const auto& [e, c] : p.terms_) {
            r.add_term(e, s * c);
        }
        return r;
    }

    /// Partial derivative with respect to variable k.
    [[nodiscard]] Polynomial derivative(std::size_t k) const {
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) {
                continue;
            }
            Exponents d = e;
            --d[k];
            r.add_term(d, c * e[k]);
        }
        return r;
    }

    /// Highest exponent of variable k over all terms.
    [[nodiscard]] int degree(std::size_t k) const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            d = std::max(d, e[k]);
        }
        return d;
    }

    [[nodiscard]] double evaluate(std::span<const double, N> values) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double term = c.template convert_to<double>();
            for (std::size_t k = 0; k < N; ++k) {
                if (e[k] != 0) {
                    term *= std::pow(values[k], e[k]);
                }
            }
            sum += term;
        }
        return sum;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    /// Human-readable form using the supplied variable names.
    [[nodiscard]] std::string to_string(const std::array<std::string, N>& names) const {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) {
                os << (c < 0 ? " - " : " + ");
            } else if (c < 0) {
                os << "-";
            }
            first = false;
            const Rational mag = c < 0 ? Rational{-c} : c;
            bool has_var = false;
            for (std::size_t k = 0; k < N; ++k) {
                has_var = has_var || e[k] != 0;
            }
            if (mag != 1 || !has_var) {
                os << mag;
            }
            bool need_star = mag != 1;
            for (std::size_t k = 0; k < N; ++k) {
                if (e[k] == 0) {
                    continue;
                }
                os << (need_star ? "*" : "") << names[k];
                if (e[k] != 1) {
                    os << "^" << e[k];
                }
                need_star = true;
            }
        }
        return os.str();
    }

private:
    Terms terms_;
};

}  // namespace expop
