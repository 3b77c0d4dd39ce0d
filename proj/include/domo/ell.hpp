#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "baseline.hpp"
#include "distorted_odds.hpp"
#include "errors.hpp"
#include "sampling.hpp"

namespace domo {

/// Enlarged log-logistic law ELL(alpha, beta, theta):
/// K(x) = 1 - 1 / ((x/beta + alpha^theta)^(1/theta) + 1 - alpha), x >= 0.
///
/// Its odds are undistort_odds(params, x) and its quantile is distort_odds applied to the
/// odds u/(1-u), which is the identity that makes a distorted odds law equal K^{-1} o F.
/// alpha = 0 is the log-logistic with scale beta and shape 1/theta; alpha = 1 is Pareto.
class EnlargedLogLogistic {
public:
    explicit EnlargedLogLogistic(ParamTriple params) : params_(ParamTriple::make(params.alpha, params.beta, params.theta)) {}

    const ParamTriple& params() const noexcept { return params_; }
    std::string spec() const { return "ell:" + params_.str(); }

    /// K / (1 - K) = (x/beta + alpha^theta)^(1/theta) - alpha.
    double odds(double x) const {
        if (!(x > 0.0)) return 0.0;
        return undistort_odds(params_, x);
    }

    double cdf(double x) const {
        const double m = odds(x);
        if (std::isinf(m)) return 1.0;
        return std::clamp(m / (1.0 + m), 0.0, 1.0);
    }

    /// Evaluated from the closed-form reciprocal, never as 1 - cdf.
    double sf(double x) const {
        const double m = odds(x);
        if (std::isinf(m)) return 0.0;
        return std::clamp(1.0 / (1.0 + m), 0.0, 1.0);
    }

    double pdf(double x) const {
        if (x < 0.0) return 0.0;
        const double m = odds(x);
        if (std::isinf(m)) return 0.0;
        return odds_rate(x) / ((1.0 + m) * (1.0 + m));
    }

    double hazard(double x) const {
        if (x < 0.0) return 0.0;
        const double m = odds(x);
        if (std::isinf(m)) return 0.0;
        return odds_rate(x) / (1.0 + m);
    }

    /// (x/beta + alpha^theta)^(1/theta - 1) / (beta theta); +inf at x = 0 when alpha = 0 and theta > 1.
    double odds_rate(double x) const {
        if (x < 0.0) return 0.0;
        const double s = x / params_.beta + std::pow(params_.alpha, params_.theta);
        return std::pow(s, 1.0 / params_.theta - 1.0) / (params_.beta * params_.theta);
    }

    /// K^{-1}(u) = beta((1/(1-u) + alpha - 1)^theta - alpha^theta), u in [0, 1).
    double quantile(double u) const {
        if (!(u >= 0.0 && u < 1.0)) {
            throw DomainError("quantile: u must lie in [0,1)");
        }
        return distort_odds(params_, u / (1.0 - u));
    }

    double isf(double s) const {
        if (!(s > 0.0 && s <= 1.0)) {
            throw DomainError("isf: s must lie in (0,1]");
        }
        return distort_odds(params_, (1.0 - s) / s);
    }

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const { return domo::sample(*this, n, seed); }

    friend bool operator==(const EnlargedLogLogistic&, const EnlargedLogLogistic&) = default;

private:
    ParamTriple params_;
};

/// K^{-1}(F(x)): the odds of the distorted odds law built from F with the same parameters.
template <class Dist>
double compose_odds(const EnlargedLogLogistic& e, const Dist& baseline, double x) {
    return e.quantile(baseline.cdf(x));
}

} // namespace domo
