#pragma once

#include <concepts>
#include <functional>
#include <limits>
#include <string>

#include "errors.hpp"

namespace domo {

/// Anything with cdf, survival, quantile and inverse survival on [0, inf).
template <class D>
concept CdfDistribution = requires(const D& d, double v) {
    { d.cdf(v) } -> std::convertible_to<double>;
    { d.sf(v) } -> std::convertible_to<double>;
    { d.quantile(v) } -> std::convertible_to<double>;
    { d.isf(v) } -> std::convertible_to<double>;
};

/// A law known only through user-supplied callables; the density is optional.
///
/// Lets callers run the order checkers on distributions outside the built-in families.
/// Density-based relations on an instance without a pdf raise CapabilityError.
struct FunctionDistribution {
    std::function<double(double)> cdf_fn;
    std::function<double(double)> quantile_fn;
    std::function<double(double)> pdf_fn;  // may be empty
    std::string name = "user";

    double cdf(double x) const { return cdf_fn(x); }
    double sf(double x) const { return 1.0 - cdf_fn(x); }
    double quantile(double u) const { return quantile_fn(u); }
    double isf(double s) const { return quantile_fn(1.0 - s); }
    bool has_density() const { return static_cast<bool>(pdf_fn); }
    double pdf(double x) const {
        if (!pdf_fn) {
            throw CapabilityError(name + " has no density");
        }
        return pdf_fn(x);
    }
};

template <class D>
bool has_density(const D& d) {
    if constexpr (requires { d.has_density(); }) {
        return d.has_density();
    } else {
        return requires { d.pdf(0.0); };
    }
}

template <class D>
double hazard_of(const D& d, double x) {
    if constexpr (requires { d.hazard(x); }) {
        return d.hazard(x);
    } else {
        const double s = d.sf(x);
        return s > 0.0 ? d.pdf(x) / s : std::numeric_limits<double>::infinity();
    }
}

template <class D>
double odds_rate_of(const D& d, double x) {
    if constexpr (requires { d.odds_rate(x); }) {
        return d.odds_rate(x);
    } else {
        const double s = d.sf(x);
        return s > 0.0 ? d.pdf(x) / (s * s) : std::numeric_limits<double>::infinity();
    }
}

template <class D>
double odds_of(const D& d, double x) {
    if constexpr (requires { d.odds(x); }) {
        return d.odds(x);
    } else {
        const double s = d.sf(x);
        return s > 0.0 ? d.cdf(x) / s : std::numeric_limits<double>::infinity();
    }
}

/// Quantile at level p, taking the upper half through the inverse survival function.
template <CdfDistribution D>
double quantile_at(const D& d, double p) {
    return p <= 0.5 ? d.quantile(p) : d.isf(1.0 - p);
}

} // namespace domo
