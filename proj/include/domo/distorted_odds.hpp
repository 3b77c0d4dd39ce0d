#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "baseline.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "sampling.hpp"

namespace domo {

/// (alpha, beta, theta) shared by the distorted odds family and the enlarged log-logistic.
struct ParamTriple {
    double alpha = 0.0;
    double beta = 1.0;
    double theta = 1.0;

    static ParamTriple make(double alpha, double beta, double theta) {
        if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
            throw ValidationError("alpha must be >= 0");
        }
        detail::require_positive(beta, "beta");
        detail::require_positive(theta, "theta");
        return {alpha, beta, theta};
    }

    std::string str() const {
        return format_number(alpha) + "," + format_number(beta) + "," + format_number(theta);
    }

    friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

/// beta * ((alpha + lambda)^theta - alpha^theta), the odds distortion.
///
/// For alpha > 0 this is evaluated as beta alpha^theta expm1(theta log1p(lambda/alpha)),
/// which stays accurate when lambda is small against alpha.
inline double distort_odds(const ParamTriple& p, double lambda) {
    if (!(lambda > 0.0)) return 0.0;
    if (std::isinf(lambda)) return kInfinity;
    if (p.alpha == 0.0) {
        return p.beta * std::pow(lambda, p.theta);
    }
    const double base = p.beta * std::pow(p.alpha, p.theta);
    return base * std::expm1(p.theta * std::log1p(lambda / p.alpha));
}

/// Inverse of distort_odds: the lambda >= 0 with distort_odds(p, lambda) = odds.
inline double undistort_odds(const ParamTriple& p, double odds) {
    if (!(odds > 0.0)) return 0.0;
    if (std::isinf(odds)) return kInfinity;
    if (p.alpha == 0.0) {
        return std::pow(odds / p.beta, 1.0 / p.theta);
    }
    const double base = p.beta * std::pow(p.alpha, p.theta);
    return p.alpha * std::expm1(std::log1p(odds / base) / p.theta);
}

/// log(1 + distort_odds(p, lambda)) without overflow for huge lambda.
inline double log1p_distorted(const ParamTriple& p, double lambda) {
    const double odds = distort_odds(p, lambda);
    if (std::isfinite(odds)) {
        return std::log1p(odds);
    }
    return std::log(p.beta) + p.theta * std::log(p.alpha + lambda);
}

/// Hazard factor T(lambda) = (alpha+lambda)^(theta-1) (lambda+1) / (1 + beta((alpha+lambda)^theta - alpha^theta)).
///
/// At lambda = 0 this is alpha^(theta-1); for alpha = 0 that is 1 when theta = 1 and the
/// limit 0 (theta > 1) or +inf (theta < 1) otherwise.
inline double t_factor(const ParamTriple& p, double lambda) {
    if (lambda == 0.0) {
        return std::pow(p.alpha, p.theta - 1.0);
    }
    const double shifted = p.alpha + lambda;
    const double log_value = (p.theta - 1.0) * std::log(shifted) + std::log1p(lambda) - log1p_distorted(p, lambda);
    return std::exp(log_value);
}

/// D(x) = beta(1-alpha)(alpha+x)^theta + (beta alpha^theta - 1)(theta x + alpha + theta - 1).
/// The derivative of 1/T has the sign of D.
inline double d_polynomial(const ParamTriple& p, double x) {
    const double c = p.beta * std::pow(p.alpha, p.theta) - 1.0;
    return p.beta * (1.0 - p.alpha) * std::pow(p.alpha + x, p.theta) + c * (p.theta * x + p.alpha + p.theta - 1.0);
}

enum class Trend { constant, increasing, decreasing, non_monotone };

inline const char* to_string(Trend t) {
    switch (t) {
    case Trend::constant: return "constant";
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::non_monotone: return "non_monotone";
    }
    return "?";
}

/// Monotonicity of T on [0, inf), decided from the sign of D.
///
/// D' is monotone (D'' has the sign of (1-alpha)(theta-1)), so D is monotone on each side
/// of its single critical point; the extreme signs over [0, inf) are read off D(0), D at
/// the critical point, and the sign of D at infinity.
inline Trend hazard_factor_trend(const ParamTriple& p) {
    const double a = p.alpha;
    const double b = p.beta;
    const double t = p.theta;
    const double c = b * std::pow(a, t) - 1.0;

    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    int at_infinity = 0;
    if (t > 1.0 && a != 1.0) {
        at_infinity = sign(1.0 - a);
    } else if (t == 1.0) {
        at_infinity = sign(b - 1.0);  // D = (alpha + x)(beta - 1)
    } else if (a == 1.0) {
        at_infinity = sign(c);  // D = c theta (x + 1)
    } else {
        at_infinity = c != 0.0 ? sign(c) : sign(1.0 - a);
    }

    double lo = d_polynomial(p, 0.0);
    double hi = lo;
    if (a != 1.0 && t != 1.0) {
        const double rhs = -c / (b * (1.0 - a));
        if (rhs > 0.0) {
            const double x_star = std::pow(rhs, 1.0 / (t - 1.0)) - a;
            if (x_star > 0.0 && std::isfinite(x_star)) {
                const double v = d_polynomial(p, x_star);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    const bool reaches_positive = hi > 0.0 || at_infinity > 0;
    const bool reaches_negative = lo < 0.0 || at_infinity < 0;
    if (!reaches_positive && !reaches_negative) return Trend::constant;
    if (!reaches_positive) return Trend::increasing;  // D <= 0: 1/T decreasing
    if (!reaches_negative) return Trend::decreasing;
    return Trend::non_monotone;
}

/// The distorted odds law: odds beta((alpha + Lambda_F)^theta - alpha^theta) over a baseline F.
/// alpha = 0 gives the odds-Marshall-Olkin family.
class DOMODistribution {
public:
    DOMODistribution(BaselineDistribution baseline, ParamTriple params)
        : baseline_(baseline), params_(ParamTriple::make(params.alpha, params.beta, params.theta)) {}

    const BaselineDistribution& baseline() const noexcept { return baseline_; }
    const ParamTriple& params() const noexcept { return params_; }

    std::string spec() const { return "domo:" + params_.str() + "@" + baseline_.spec(); }

    double odds(double x) const { return distort_odds(params_, baseline_.odds(x)); }

    double sf(double x) const {
        const double o = odds(x);
        return std::isinf(o) ? 0.0 : 1.0 / (1.0 + o);
    }

    double cdf(double x) const {
        const double o = odds(x);
        return std::isinf(o) ? 1.0 : o / (1.0 + o);
    }

    /// The same cdf written through F and 1-F directly:
    /// beta((alpha + (1-alpha)F)^theta - (alpha Fbar)^theta) / (Fbar^theta + beta(...)).
    double cdf_explicit(double x) const {
        const double f = baseline_.cdf(x);
        const double s = baseline_.sf(x);
        const double a = params_.alpha;
        const double core = params_.beta * (std::pow(a + (1.0 - a) * f, params_.theta) - std::pow(a * s, params_.theta));
        return core / (std::pow(s, params_.theta) + core);
    }

    double pdf(double x) const {
        if (x < 0.0) return 0.0;
        const double lambda = baseline_.odds(x);
        const double o = distort_odds(params_, lambda);
        if (std::isinf(o)) return 0.0;
        const double g = 1.0 / (1.0 + o);
        const double lead = params_.beta * params_.theta * std::pow(params_.alpha + lambda, params_.theta - 1.0);
        if (std::isinf(lead)) return kInfinity;
        return lead * baseline_.odds_rate(x) * g * g;
    }

    /// beta theta h_F(x) T(Lambda_F(x)).
    double hazard(double x) const {
        if (x < 0.0) return 0.0;
        return params_.beta * params_.theta * baseline_.hazard(x) * t_factor(params_, baseline_.odds(x));
    }

    double odds_rate(double x) const {
        if (x < 0.0) return 0.0;
        const double lambda = baseline_.odds(x);
        return params_.beta * params_.theta * std::pow(params_.alpha + lambda, params_.theta - 1.0) * baseline_.odds_rate(x);
    }

    double quantile(double u) const {
        if (!(u > 0.0 && u < 1.0)) {
            throw DomainError("quantile: u must lie in (0,1)");
        }
        return baseline_.odds_inverse(undistort_odds(params_, u / (1.0 - u)));
    }

    double isf(double s) const {
        if (!(s > 0.0 && s < 1.0)) {
            throw DomainError("isf: s must lie in (0,1)");
        }
        return baseline_.odds_inverse(undistort_odds(params_, (1.0 - s) / s));
    }

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const { return domo::sample(*this, n, seed); }

    friend bool operator==(const DOMODistribution&, const DOMODistribution&) = default;

private:
    BaselineDistribution baseline_;
    ParamTriple params_;
};

inline DOMODistribution make_domo(const BaselineDistribution& baseline, const ParamTriple& params) {
    return {baseline, params};
}

/// The alpha = 0 member, odds beta Lambda_F^theta.
inline DOMODistribution make_omo(const BaselineDistribution& baseline, double beta, double theta) {
    return {baseline, ParamTriple::make(0.0, beta, theta)};
}

} // namespace domo
