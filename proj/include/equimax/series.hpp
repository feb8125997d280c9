#pragma once

// Truncated Maclaurin series with exact rational coefficients.
//
// Coefficient k stores the Taylor coefficient f^{(k)}(0)/k!, not the raw
// derivative; formulas stated in terms of f^{(k)}(0) apply the k! factor at
// the comparison site. The truncation order is tracked explicitly through
// every operation: coefficients beyond it are unknown, never assumed zero,
// and reading past it is an error. That rule is what makes an "identity
// verified to order N" claim trustworthy.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equimax/exact.hpp"
#include "equimax/ruiz.hpp"

namespace equimax {

class PowerSeries {
  public:
    explicit PowerSeries(std::vector<Rational> coefficients) : coef_(std::move(coefficients)) {
        if (coef_.empty()) {
            throw std::invalid_argument("PowerSeries: needs at least the constant coefficient");
        }
    }

    static PowerSeries zero(unsigned order) {
        return PowerSeries(std::vector<Rational>(order + 1, Rational(0)));
    }

    unsigned order() const { return static_cast<unsigned>(coef_.size()) - 1; }

    const Rational& operator[](unsigned k) const {
        if (k >= coef_.size()) {
            throw std::out_of_range("PowerSeries: coefficient " + std::to_string(k) +
                                    " beyond truncation order " + std::to_string(order()));
        }
        return coef_[k];
    }

    const std::vector<Rational>& coefficients() const { return coef_; }

    PowerSeries truncated(unsigned new_order) const {
        if (new_order >= coef_.size()) {
            throw std::out_of_range("PowerSeries: cannot extend truncation order");
        }
        return PowerSeries(std::vector<Rational>(coef_.begin(), coef_.begin() + new_order + 1));
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.coef_ == b.coef_;
    }

  private:
    std::vector<Rational> coef_;
};

// Series of the exponential density lambda*e^(-lambda*x):
// coefficient k is lambda*(-lambda)^k / k!.
inline PowerSeries exp_density_series(const Rational& lambda, unsigned order) {
    if (!(lambda > Rational(0))) {
        throw std::domain_error("exp_density_series: lambda must be positive");
    }
    std::vector<Rational> c(order + 1);
    Rational pw(1);  // (-lambda)^k
    for (unsigned k = 0; k <= order; ++k) {
        c[k] = lambda * pw / Rational(factorial(k));
        pw *= -lambda;
    }
    return PowerSeries(std::move(c));
}

// Cauchy product, truncated to the shorter operand's valid order.
inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
    const unsigned order = std::min(a.order(), b.order());
    std::vector<Rational> c(order + 1, Rational(0));
    for (unsigned m = 0; m <= order; ++m) {
        for (unsigned j = 0; j <= m; ++j) {
            c[m] += a[j] * b[m - j];
        }
    }
    return PowerSeries(std::move(c));
}

// Integral from 0: one extra coefficient of information is gained.
inline PowerSeries antiderivative(const PowerSeries& a) {
    std::vector<Rational> c(a.order() + 2);
    c[0] = Rational(0);
    for (unsigned k = 0; k <= a.order(); ++k) {
        c[k + 1] = a[k] / Rational(static_cast<int>(k) + 1);
    }
    return PowerSeries(std::move(c));
}

// Coefficientwise derivative; one coefficient of information is lost.
inline PowerSeries derivative(const PowerSeries& a) {
    if (a.order() == 0) {
        throw std::domain_error("derivative: truncation order 0 leaves no known coefficients");
    }
    std::vector<Rational> c(a.order());
    for (unsigned k = 1; k <= a.order(); ++k) {
        c[k - 1] = a[k] * Rational(static_cast<int>(k));
    }
    return PowerSeries(std::move(c));
}

// G_m = F^m * f where F is the antiderivative of f with F(0) = 0.
// m = 0 returns f unchanged. For m >= 1 the result keeps f's order: F
// carries order+1 coefficients and each product truncates back to order.
inline PowerSeries g_m_series(const PowerSeries& f, unsigned m) {
    if (m == 0) {
        return f;
    }
    const PowerSeries big_f = antiderivative(f);
    PowerSeries result = f;
    for (unsigned i = 0; i < m; ++i) {
        result = multiply(result, big_f);
    }
    return result;
}

// Series of y -> a(n*y): coefficient k picks up a factor n^k.
inline PowerSeries scale_argument(const PowerSeries& a, unsigned n) {
    if (n < 1) {
        throw std::domain_error("scale_argument: n must be >= 1");
    }
    std::vector<Rational> c(a.order() + 1);
    Rational pw(1);
    for (unsigned k = 0; k <= a.order(); ++k) {
        c[k] = a[k] * pw;
        pw *= Rational(static_cast<long long>(n));
    }
    return PowerSeries(std::move(c));
}

// Series of x -> integral_0^x a(y) b(x-y) dy.
//
// Term-by-term: int_0^x y^j (x-y)^k dy = x^(j+k+1) * j!k!/(j+k+1)!, so
// coefficient m+1 of the result is sum_{j+k=m} a_j b_k j!k!/(m+1)! and
// coefficient 0 is 0. Result order = min(a.order, b.order) + 1.
inline PowerSeries convolution_integral(const PowerSeries& a, const PowerSeries& b) {
    const unsigned order = std::min(a.order(), b.order());
    std::vector<Rational> c(order + 2, Rational(0));
    for (unsigned m = 0; m <= order; ++m) {
        Rational acc(0);
        for (unsigned j = 0; j <= m; ++j) {
            acc += a[j] * b[m - j] * Rational(factorial(j) * factorial(m - j));
        }
        c[m + 1] = acc / Rational(factorial(m + 1));
    }
    return PowerSeries(std::move(c));
}

// The unique series with f(0) = f0 whose derivative chain satisfies
// f^(k)(0) = (f1/f0)^(k-1) * f1, i.e. the expansion of f0*exp((f1/f0)x).
inline PowerSeries maclaurin_reconstruct(const Rational& f0, const Rational& f1, unsigned order) {
    if (f0.is_zero()) {
        throw std::domain_error("maclaurin_reconstruct: f0 must be nonzero");
    }
    const Rational ratio = f1 / f0;
    std::vector<Rational> c(order + 1);
    Rational pw(1);  // ratio^k
    for (unsigned k = 0; k <= order; ++k) {
        c[k] = f0 * pw / Rational(factorial(k));
        pw *= ratio;
    }
    return PowerSeries(std::move(c));
}

// Verifies k! * a_k = (f'(0)/f(0))^(k-1) * f'(0) for 1 <= k <= k_max.
inline IdentityReport check_lemma3_hypothesis(const PowerSeries& f, unsigned k_max) {
    if (f[0].is_zero()) {
        throw std::domain_error("check_lemma3_hypothesis: f(0) must be nonzero");
    }
    if (f.order() < k_max) {
        throw std::domain_error("check_lemma3_hypothesis: series order below k_max");
    }
    IdentityReport report;
    report.identity_name = "lemma3-hypothesis";
    report.parameter_set = {{"k_max", std::to_string(k_max)}};
    const Rational f1 = f.order() >= 1 ? f[1] : Rational(0);
    const Rational ratio = f1 / f[0];
    for (unsigned k = 1; k <= k_max; ++k) {
        Rational lhs = Rational(factorial(k)) * f[k];
        Rational rhs = rat_pow(ratio, static_cast<long long>(k) - 1) * f1;
        if (lhs != rhs) {
            report.discrepancies.push_back({"k=" + std::to_string(k), lhs, rhs});
        }
    }
    return report;
}

// Verifies, for 0 <= i <= 2m,
//
//   G_m^(i)(0) = (f'(0)/f(0))^(i-m) * f(0)^(m+1) * H_{m,i}(m+1)
//
// with G_m^(i)(0) read off as i! times coefficient i of g_m_series(f, m).
// The derivative-chain hypothesis is checked first for 1 <= r <= m-1;
// violations are reported, not assumed away.
inline IdentityReport verify_lemma1(const PowerSeries& f, unsigned m) {
    if (f[0].is_zero()) {
        throw std::domain_error("verify_lemma1: f(0) must be nonzero");
    }
    if (f.order() < 2 * m) {
        throw std::domain_error("verify_lemma1: series order must be at least 2m");
    }
    IdentityReport report;
    report.identity_name = "lemma1";
    report.parameter_set = {{"m", std::to_string(m)}};

    const Rational f0 = f[0];
    const Rational f1 = f.order() >= 1 ? f[1] : Rational(0);
    const Rational ratio = f1 / f0;

    for (unsigned r = 2; r + 1 <= m; ++r) {  // r = 1 holds identically
        Rational lhs = Rational(factorial(r)) * f[r];
        Rational rhs = rat_pow(ratio, static_cast<long long>(r) - 1) * f1;
        if (lhs != rhs) {
            report.discrepancies.push_back({"hypothesis r=" + std::to_string(r), lhs, rhs});
        }
    }

    const PowerSeries g = g_m_series(f, m);
    const Rational f0_pow = rat_pow(f0, static_cast<long long>(m) + 1);
    const Rational arg{static_cast<int>(m) + 1};
    for (unsigned i = 0; i <= 2 * m; ++i) {
        const Rational lhs = Rational(factorial(i)) * g[i];
        const Rational h = hni(m, i, arg);
        const long long e = static_cast<long long>(i) - static_cast<long long>(m);
        Rational rhs;
        if (e >= 0 || !ratio.is_zero()) {
            rhs = rat_pow(ratio, e) * f0_pow * h;
        } else if (h.is_zero()) {
            rhs = Rational(0);  // 0 * (negative power of 0): the identity degenerates to 0 = 0
        } else {
            throw std::domain_error("verify_lemma1: f'(0) = 0 makes a negative ratio power undefined");
        }
        if (lhs != rhs) {
            report.discrepancies.push_back({"i=" + std::to_string(i), lhs, rhs});
        }
    }
    return report;
}

struct CoefficientMismatch {
    unsigned index;
    Rational lhs;
    Rational rhs;
};

// Compares, coefficient by coefficient up to `order`, the two sides of
//
//   integral_0^x f(ny) G_{n-2}(x-y) dy  =  f(x) * integral_0^x G_{n-2}(y) dy.
//
// Returns the first mismatching index with both exact values, or nullopt if
// every compared coefficient agrees. This is the series-level form of the
// consecutive-maxima equidistribution identity; the exponential density
// satisfies it identically.
inline std::optional<CoefficientMismatch> verify_eq8(const PowerSeries& f, long long n,
                                                     unsigned order) {
    if (n < 2) {
        throw std::domain_error("verify_eq8: requires n >= 2");
    }
    if (order < 1) {
        throw std::invalid_argument("verify_eq8: order must be >= 1");
    }
    if (f.order() < order) {
        throw std::domain_error("verify_eq8: series order below comparison order");
    }
    const unsigned m = static_cast<unsigned>(n - 2);
    const PowerSeries g = g_m_series(f, m);
    const PowerSeries lhs = convolution_integral(scale_argument(f, static_cast<unsigned>(n)), g);
    const PowerSeries rhs = multiply(f, antiderivative(g));
    for (unsigned k = 0; k <= order; ++k) {
        if (lhs[k] != rhs[k]) {
            return CoefficientMismatch{k, lhs[k], rhs[k]};
        }
    }
    return std::nullopt;
}

}  // namespace equimax
