#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "distorted_odds.hpp"
#include "errors.hpp"
#include "sampling.hpp"

namespace domo {

/// Kolmogorov-Smirnov statistic of sorted samples against a continuous cdf.
template <class Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& cdf) {
    if (sorted.empty()) {
        throw DomainError("ks_distance: samples must be nonempty");
    }
    if (!std::is_sorted(sorted.begin(), sorted.end())) {
        throw DomainError("ks_distance: samples must be sorted");
    }
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

/// 1% asymptotic critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

struct StabilityReport {
    ParamTriple params;
    double p = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double ks_min = 0.0;          ///< minima vs G(alpha, beta/p, theta)
    double ks_max = 0.0;          ///< maxima vs G(alpha, beta*p, theta)
    double ks_min_unscaled = 0.0; ///< minima vs G(alpha, beta, theta), the negative control
    double ks_max_unscaled = 0.0;
    double critical = 0.0;
    bool pass_min = false;
    bool pass_max = false;
    double mean_group = 0.0;      ///< empirical mean of N
    std::size_t cap_hits = 0;
};

inline constexpr std::uint64_t kGeometricCap = 10'000'000;

/// Draws N from P(N = k) = p(1-p)^(k-1), k >= 1.
inline std::uint64_t draw_geometric(double p, UniformSource& uniform, bool& capped) {
    capped = false;
    if (p >= 1.0) return 1;
    const double k = std::ceil(std::log(uniform()) / std::log1p(-p));
    if (!(k < static_cast<double>(kGeometricCap))) {
        capped = true;
        return kGeometricCap;
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

/// Monte Carlo check that the min and max over a geometric number of draws are again
/// distorted odds laws with beta replaced by beta/p and beta*p.
inline StabilityReport geometric_extreme_experiment(const DOMODistribution& d, double p, std::size_t n,
                                                    std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw DomainError("p must lie in (0,1]");
    }
    if (n < 100) {
        throw DomainError("n must be >= 100");
    }
    UniformSource uniform(seed);
    std::vector<double> minima;
    std::vector<double> maxima;
    minima.reserve(n);
    maxima.reserve(n);
    StabilityReport r;
    r.params = d.params();
    r.p = p;
    r.n = n;
    r.seed = seed;
    double total = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
        bool capped = false;
        const std::uint64_t count = draw_geometric(p, uniform, capped);
        r.cap_hits += capped ? 1 : 0;
        total += static_cast<double>(count);
        // Inverse transform is monotone, so the extremes of the draws are the images of the
        // extreme uniforms.
        double lo = 1.0;
        double hi = 0.0;
        for (std::uint64_t k = 0; k < count; ++k) {
            const double u = uniform();
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        auto invert = [&](double u) { return u <= 0.5 ? d.quantile(u) : d.isf(1.0 - u); };
        minima.push_back(invert(lo));
        maxima.push_back(invert(hi));
    }
    std::sort(minima.begin(), minima.end());
    std::sort(maxima.begin(), maxima.end());

    const auto& q = d.params();
    const DOMODistribution min_law(d.baseline(), ParamTriple::make(q.alpha, q.beta / p, q.theta));
    const DOMODistribution max_law(d.baseline(), ParamTriple::make(q.alpha, q.beta * p, q.theta));
    auto cdf_of = [](const DOMODistribution& law) { return [&law](double x) { return law.cdf(x); }; };

    r.ks_min = ks_distance(minima, cdf_of(min_law));
    r.ks_max = ks_distance(maxima, cdf_of(max_law));
    r.ks_min_unscaled = ks_distance(minima, cdf_of(d));
    r.ks_max_unscaled = ks_distance(maxima, cdf_of(d));
    r.critical = ks_critical_1pct(n);
    r.pass_min = r.ks_min < r.critical;
    r.pass_max = r.ks_max < r.critical;
    r.mean_group = total / static_cast<double>(n);
    return r;
}

} // namespace domo
