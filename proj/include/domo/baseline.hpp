#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "format.hpp"
#include "root.hpp"
#include "special.hpp"

namespace domo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Everything the odds/hazard calculus says about one abscissa.
struct ProfilePoint {
    double x;
    double cdf;
    double pdf;
    double survival;
    double hazard;            ///< pdf / survival, +inf where survival = 0
    double reversed_hazard;   ///< pdf / cdf, +inf where cdf = 0
    double odds;              ///< cdf / survival
    double odds_rate;         ///< pdf / survival^2
};

enum class BaselineFamily { exponential, gamma, weibull, log_logistic };

/// A baseline law F on [0, inf).
///
/// Immutable after construction. Parameters are validated by the named constructors;
/// survival, odds and the quantile are evaluated from dedicated expressions (not as
/// 1 - cdf) wherever a closed form exists, so tail values keep relative accuracy.
class BaselineDistribution {
public:
    static BaselineDistribution exponential(double rate) {
        detail::require_positive(rate, "rate");
        return {BaselineFamily::exponential, 1.0, rate};
    }
    static BaselineDistribution gamma(double shape, double scale) {
        detail::require_positive(shape, "shape");
        detail::require_positive(scale, "scale");
        return {BaselineFamily::gamma, shape, scale};
    }
    static BaselineDistribution weibull(double shape, double scale) {
        detail::require_positive(shape, "shape");
        detail::require_positive(scale, "scale");
        return {BaselineFamily::weibull, shape, scale};
    }
    /// L(x) = x / (x + 1).
    static BaselineDistribution standard_log_logistic() { return {BaselineFamily::log_logistic, 1.0, 1.0}; }

    BaselineFamily family() const noexcept { return family_; }
    double shape() const noexcept { return shape_; }
    /// Scale for gamma/weibull; 1/rate for the exponential.
    double scale() const noexcept { return family_ == BaselineFamily::exponential ? 1.0 / second_ : second_; }
    double rate() const noexcept { return family_ == BaselineFamily::exponential ? second_ : 1.0 / second_; }
    double support_lower() const noexcept { return 0.0; }

    std::string spec() const {
        switch (family_) {
        case BaselineFamily::exponential: return "exp:" + format_number(second_);
        case BaselineFamily::gamma: return "gamma:" + format_number(shape_) + "," + format_number(second_);
        case BaselineFamily::weibull: return "weibull:" + format_number(shape_) + "," + format_number(second_);
        case BaselineFamily::log_logistic: return "loglogistic";
        }
        return {};
    }

    double cdf(double x) const {
        if (!(x > 0.0)) return 0.0;
        switch (family_) {
        case BaselineFamily::exponential: return -std::expm1(-second_ * x);
        case BaselineFamily::gamma: return special::gamma_p(shape_, x / second_);
        case BaselineFamily::weibull: return -std::expm1(-std::pow(x / second_, shape_));
        case BaselineFamily::log_logistic: return std::isinf(x) ? 1.0 : x / (x + 1.0);
        }
        return 0.0;
    }

    double sf(double x) const {
        if (!(x > 0.0)) return 1.0;
        switch (family_) {
        case BaselineFamily::exponential: return std::exp(-second_ * x);
        case BaselineFamily::gamma: return special::gamma_q(shape_, x / second_);
        case BaselineFamily::weibull: return std::exp(-std::pow(x / second_, shape_));
        case BaselineFamily::log_logistic: return 1.0 / (x + 1.0);
        }
        return 1.0;
    }

    double pdf(double x) const {
        if (x < 0.0) return 0.0;
        switch (family_) {
        case BaselineFamily::exponential: return second_ * std::exp(-second_ * x);
        case BaselineFamily::gamma: {
            if (x == 0.0) {
                return shape_ > 1.0 ? 0.0 : (shape_ < 1.0 ? kInfinity : 1.0 / second_);
            }
            const double z = x / second_;
            return std::exp((shape_ - 1.0) * std::log(z) - z - std::lgamma(shape_)) / second_;
        }
        case BaselineFamily::weibull: {
            const double z = x / second_;
            return shape_ / second_ * std::pow(z, shape_ - 1.0) * std::exp(-std::pow(z, shape_));
        }
        case BaselineFamily::log_logistic: return 1.0 / ((1.0 + x) * (1.0 + x));
        }
        return 0.0;
    }

    /// Odds F/(1-F).
    double odds(double x) const {
        if (!(x > 0.0)) return 0.0;
        switch (family_) {
        case BaselineFamily::exponential: return std::expm1(second_ * x);
        case BaselineFamily::weibull: return std::expm1(std::pow(x / second_, shape_));
        case BaselineFamily::log_logistic: return x;
        case BaselineFamily::gamma: {
            const auto pq = special::incomplete_gamma(shape_, x / second_);
            return pq.upper > 0.0 ? pq.lower / pq.upper : kInfinity;
        }
        }
        return 0.0;
    }

    double hazard(double x) const {
        if (x < 0.0) return 0.0;
        switch (family_) {
        case BaselineFamily::exponential: return second_;
        case BaselineFamily::weibull:
            return shape_ / second_ * std::pow(x / second_, shape_ - 1.0);
        case BaselineFamily::log_logistic: return 1.0 / (1.0 + x);
        case BaselineFamily::gamma: {
            const double s = sf(x);
            return s > 0.0 ? pdf(x) / s : kInfinity;
        }
        }
        return 0.0;
    }

    /// Odds rate, the derivative of the odds: pdf / sf^2.
    double odds_rate(double x) const {
        if (x < 0.0) return 0.0;
        switch (family_) {
        case BaselineFamily::exponential: return second_ * std::exp(second_ * x);
        case BaselineFamily::log_logistic: return 1.0;
        case BaselineFamily::weibull: {
            const double z = std::pow(x / second_, shape_);
            return shape_ / second_ * std::pow(x / second_, shape_ - 1.0) * std::exp(z);
        }
        case BaselineFamily::gamma: {
            const double s = sf(x);
            return s > 0.0 ? pdf(x) / (s * s) : kInfinity;
        }
        }
        return 0.0;
    }

    /// Inverse cdf on (0, 1).
    double quantile(double u) const {
        if (!(u > 0.0 && u < 1.0)) {
            throw DomainError("quantile: u must lie in (0,1)");
        }
        switch (family_) {
        case BaselineFamily::exponential: return -std::log1p(-u) / second_;
        case BaselineFamily::weibull: return second_ * std::pow(-std::log1p(-u), 1.0 / shape_);
        case BaselineFamily::log_logistic: return u / (1.0 - u);
        case BaselineFamily::gamma: return u <= 0.5 ? gamma_inverse_lower(u) : gamma_inverse_upper(1.0 - u);
        }
        return 0.0;
    }

    /// Inverse survival function on (0, 1): the x with sf(x) = s.
    double isf(double s) const {
        if (!(s > 0.0 && s < 1.0)) {
            throw DomainError("isf: s must lie in (0,1)");
        }
        switch (family_) {
        case BaselineFamily::exponential: return -std::log(s) / second_;
        case BaselineFamily::weibull: return second_ * std::pow(-std::log(s), 1.0 / shape_);
        case BaselineFamily::log_logistic: return (1.0 - s) / s;
        case BaselineFamily::gamma: return s >= 0.5 ? gamma_inverse_lower(1.0 - s) : gamma_inverse_upper(s);
        }
        return 0.0;
    }

    /// The abscissa whose odds equal `lambda` (lambda >= 0).
    double odds_inverse(double lambda) const {
        if (!(lambda >= 0.0)) {
            throw DomainError("odds_inverse: odds must be >= 0");
        }
        if (lambda == 0.0) return 0.0;
        if (std::isinf(lambda)) return kInfinity;
        switch (family_) {
        case BaselineFamily::exponential: return std::log1p(lambda) / second_;
        case BaselineFamily::weibull: return second_ * std::pow(std::log1p(lambda), 1.0 / shape_);
        case BaselineFamily::log_logistic: return lambda;
        case BaselineFamily::gamma: break;
        }
        const double denom = 1.0 + lambda;
        if (lambda <= 1.0) {
            return gamma_inverse_lower(lambda / denom);
        }
        return gamma_inverse_upper(1.0 / denom);
    }

    friend bool operator==(const BaselineDistribution&, const BaselineDistribution&) = default;

private:
    BaselineDistribution(BaselineFamily family, double shape, double second) : family_(family), shape_(shape), second_(second) {}

    // Solve P(shape, z) = u in t = log z, where log P is close to linear for small z.
    double gamma_inverse_lower(double u) const {
        const double log_target = std::log(u);
        auto fn = [&](double t) {
            const double z = std::exp(t);
            const auto pq = special::incomplete_gamma(shape_, z);
            const double weight = std::exp(shape_ * t - z - std::lgamma(shape_));
            return std::pair{std::log(pq.lower) - log_target, weight / pq.lower};
        };
        return std::exp(solve_log_abscissa(fn, u)) * second_;
    }

    // Solve Q(shape, z) = s in t = log z; the residual log s - log Q is increasing in t.
    double gamma_inverse_upper(double s) const {
        const double log_target = std::log(s);
        auto fn = [&](double t) {
            const double z = std::exp(t);
            const auto pq = special::incomplete_gamma(shape_, z);
            const double weight = std::exp(shape_ * t - z - std::lgamma(shape_));
            return std::pair{log_target - std::log(pq.upper), weight / pq.upper};
        };
        return std::exp(solve_log_abscissa(fn, 1.0 - s)) * second_;
    }

    template <class Fn>
    double solve_log_abscissa(Fn& fn, double u) const {
        // Start from the small-u power law or the mean, whichever applies.
        double start = std::log(shape_);
        if (u < 0.1) {
            start = std::min(start, (std::log(u) + std::lgamma(shape_ + 1.0)) / shape_);
        }
        const auto [lo, hi] = root::expand_bracket(fn, start, 0.5);
        const auto result = root::newton_bisect(fn, lo, hi, 0.5 * (lo + hi), 1e-15);
        return result.x;
    }

    BaselineFamily family_;
    double shape_;
    double second_;  // rate (exponential) or scale (gamma, weibull)
};

/// Builds a baseline from a family tag and its parameter list:
/// "exp" {rate}, "gamma" {shape, scale}, "gammarate" {shape, rate}, "weibull" {shape, scale},
/// "loglogistic" {}.
inline BaselineDistribution make_baseline(std::string_view family, std::span<const double> params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n) {
            throw ParseError(std::string(family) + " expects " + std::to_string(n) + " parameter(s), got " +
                             std::to_string(params.size()));
        }
    };
    if (family == "exp" || family == "exponential") {
        expect(1);
        return BaselineDistribution::exponential(params[0]);
    }
    if (family == "gamma") {
        expect(2);
        return BaselineDistribution::gamma(params[0], params[1]);
    }
    if (family == "gammarate") {
        expect(2);
        detail::require_positive(params[1], "rate");
        return BaselineDistribution::gamma(params[0], 1.0 / params[1]);
    }
    if (family == "weibull") {
        expect(2);
        return BaselineDistribution::weibull(params[0], params[1]);
    }
    if (family == "loglogistic") {
        expect(0);
        return BaselineDistribution::standard_log_logistic();
    }
    throw ParseError("unknown baseline family '" + std::string(family) + "'");
}

/// Evaluates the odds/hazard calculus at x from the distribution's cdf, survival and pdf.
template <class Dist>
ProfilePoint profile(const Dist& d, double x) {
    ProfilePoint p{};
    p.x = x;
    p.cdf = d.cdf(x);
    p.survival = d.sf(x);
    p.pdf = d.pdf(x);
    p.hazard = p.survival > 0.0 ? p.pdf / p.survival : kInfinity;
    p.reversed_hazard = p.cdf > 0.0 ? p.pdf / p.cdf : kInfinity;
    p.odds = p.survival > 0.0 ? p.cdf / p.survival : kInfinity;
    p.odds_rate = p.survival > 0.0 ? p.pdf / (p.survival * p.survival) : kInfinity;
    return p;
}

} // namespace domo
