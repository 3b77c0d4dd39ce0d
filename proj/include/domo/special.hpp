#pragma once

#include <cmath>
#include <limits>

namespace domo::special {

/// Regularized incomplete gamma pair P(a, x) + Q(a, x) = 1, each computed so that
/// the smaller of the two keeps full relative accuracy.
struct IncompleteGamma {
    double lower;  ///< P(a, x)
    double upper;  ///< Q(a, x)
};

namespace detail {

constexpr int kMaxTerms = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// log of x^a e^{-x} / Gamma(a)
inline double log_prefactor(double a, double x) {
    return a * std::log(x) - x - std::lgamma(a);
}

// P(a, x) by the power series, valid and fast for x < a + 1.
inline double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxTerms; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            break;
        }
    }
    return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz), valid for x >= a + 1.
inline double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            break;
        }
    }
    return std::exp(log_prefactor(a, x)) * h;
}

} // namespace detail

/// Requires a > 0. x <= 0 gives {0, 1}; x = +inf gives {1, 0}.
inline IncompleteGamma incomplete_gamma(double a, double x) {
    if (!(x > 0.0)) {
        return {0.0, 1.0};
    }
    if (std::isinf(x)) {
        return {1.0, 0.0};
    }
    if (x < a + 1.0) {
        const double p = detail::lower_series(a, x);
        return {p, 1.0 - p};
    }
    const double q = detail::upper_fraction(a, x);
    return {1.0 - q, q};
}

inline double gamma_p(double a, double x) { return incomplete_gamma(a, x).lower; }
inline double gamma_q(double a, double x) { return incomplete_gamma(a, x).upper; }

} // namespace domo::special
