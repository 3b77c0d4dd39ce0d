#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distribution.hpp"
#include "errors.hpp"
#include "format.hpp"

namespace domo {

enum class Relation { st, hr, rh, lr, convex_transform, dispersive };
enum class OrderStatus { holds, reversed, crosses, inconclusive };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::st: return "st";
    case Relation::hr: return "hr";
    case Relation::rh: return "rh";
    case Relation::lr: return "lr";
    case Relation::convex_transform: return "c";
    case Relation::dispersive: return "disp";
    }
    return "?";
}

inline const char* to_string(OrderStatus s) {
    switch (s) {
    case OrderStatus::holds: return "holds";
    case OrderStatus::reversed: return "reversed";
    case OrderStatus::crosses: return "crosses";
    case OrderStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

inline Relation parse_relation(std::string_view text) {
    if (text == "st") return Relation::st;
    if (text == "hr") return Relation::hr;
    if (text == "rh") return Relation::rh;
    if (text == "lr") return Relation::lr;
    if (text == "c" || text == "cx") return Relation::convex_transform;
    if (text == "disp") return Relation::dispersive;
    throw ParseError("unknown relation '" + std::string(text) + "' (expected st|hr|rh|lr|c|disp)");
}

/// Probability levels used to place grid abscissas through the quantile functions.
struct GridSpec {
    std::size_t count = 2049;
    double p_lo = 1e-4;
    double p_hi = 1.0 - 1e-4;
    double slack = 1e-9;  ///< relative tolerance absorbed at each comparison

    void validate() const {
        if (!(p_lo > 0.0 && p_lo < p_hi && p_hi < 1.0)) {
            throw ValidationError("grid requires 0 < p_lo < p_hi < 1");
        }
        if (count < 16) {
            throw ValidationError("grid count must be >= 16");
        }
        if (!(slack >= 0.0)) {
            throw ValidationError("grid slack must be >= 0");
        }
    }

    std::string str() const {
        return "count=" + std::to_string(count) + " p_lo=" + format_number(p_lo) + " p_hi=" + format_number(p_hi) +
               " slack=" + format_number(slack);
    }
};

/// Result of one numeric order check of `left` against `right` (left <= right?).
struct OrderVerdict {
    Relation relation = Relation::st;
    OrderStatus status = OrderStatus::inconclusive;
    bool equal = false;              ///< no violation beyond slack in either direction
    std::optional<double> witness;   ///< first abscissa whose sign disagrees with the first decided one
    double max_violation = 0.0;      ///< largest relative amount by which left <= right fails
    std::size_t points = 0;          ///< usable comparisons
    std::optional<OrderStatus> odds_route;  ///< st only: the verdict recomputed from odds
    GridSpec grid;

    bool holds() const { return status == OrderStatus::holds; }
    bool holds_reversed() const { return status == OrderStatus::reversed || equal; }
};

/// Hazard/odds-rate monotonicity and cdf curvature observed on a grid.
struct ShapeReport {
    bool ihr = false;
    bool dhr = false;
    bool ior = false;
    bool dor = false;
    bool cdf_convex = false;
    bool cdf_concave = false;
    std::string note;
};

namespace detail {

inline constexpr double kRounding = 256.0 * std::numeric_limits<double>::epsilon();

struct Comparison {
    int sign = 0;       // +1: a > b beyond tolerance, -1: a < b beyond tolerance
    double rel = 0.0;   // (a - b) / max(|a|, |b|)
    bool valid = true;
};

// Decides a >= b up to `slack * scale + floor_abs`.
inline Comparison compare(double a, double b, double slack, double floor_abs = 0.0) {
    if (std::isnan(a) || std::isnan(b)) return {0, 0.0, false};
    if (std::isinf(a) || std::isinf(b)) {
        if (a == b) return {0, 0.0, false};
        return {a > b ? 1 : -1, a > b ? 1.0 : -1.0, true};
    }
    const double diff = a - b;
    const double scale = std::max(std::abs(a), std::abs(b));
    const double tol = (slack + kRounding) * scale + floor_abs;
    const int sign = diff > tol ? 1 : (diff < -tol ? -1 : 0);
    return {sign, scale > 0.0 ? diff / scale : 0.0, true};
}

class Tally {
public:
    void add(double x, const Comparison& c) {
        if (!c.valid) return;
        ++valid_;
        max_violation_ = std::max(max_violation_, -c.rel);
        if (c.sign == 0) return;
        if (first_sign_ == 0) {
            first_sign_ = c.sign;
        } else if (c.sign != first_sign_ && !witness_) {
            witness_ = x;
        }
        (c.sign > 0 ? pos_ : neg_) = true;
    }

    OrderVerdict finish(Relation r, const GridSpec& grid) const {
        OrderVerdict v;
        v.relation = r;
        v.grid = grid;
        v.points = valid_;
        v.max_violation = max_violation_;
        if (valid_ < 3) {
            v.status = OrderStatus::inconclusive;
            return v;
        }
        if (pos_ && neg_) {
            v.status = OrderStatus::crosses;
            v.witness = witness_;
        } else if (neg_) {
            v.status = OrderStatus::reversed;
        } else {
            v.status = OrderStatus::holds;
            v.equal = !pos_;
        }
        return v;
    }

    bool decreasing_seen() const { return neg_; }
    bool increasing_seen() const { return pos_; }
    std::size_t valid() const { return valid_; }

private:
    bool pos_ = false;
    bool neg_ = false;
    int first_sign_ = 0;
    std::optional<double> witness_;
    double max_violation_ = 0.0;
    std::size_t valid_ = 0;
};

// F2^{-1}(F1(x)); NaN where F1(x) is 0 or 1.
template <class D1, class D2>
double transform(const D1& d1, const D2& d2, double x) {
    const double f = d1.cdf(x);
    const double s = d1.sf(x);
    if (!(f > 0.0) || !(s > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return s < 0.5 ? d2.isf(s) : d2.quantile(f);
}

template <class D>
void require_density(const D& d, Relation r) {
    if (!has_density(d)) {
        throw CapabilityError(std::string("relation ") + to_string(r) + " needs a density");
    }
}

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

// Points (F1^{-1}(u), F2^{-1}(u)) for u drawn from both F1(grid) and F2(grid), sorted by the
// first coordinate. Swapping the two laws swaps the coordinates and nothing else, so the c and
// disp verdicts are antisymmetric by construction.
template <class D1, class D2>
Curve transform_curve(const D1& d1, const D2& d2, const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(2 * grid.size());
    for (double x : grid) {
        const double y = transform(d1, d2, x);
        if (std::isfinite(y)) pts.emplace_back(x, y);
        const double w = transform(d2, d1, x);
        if (std::isfinite(w)) pts.emplace_back(w, x);
    }
    std::sort(pts.begin(), pts.end());
    Curve c;
    for (const auto& [x, y] : pts) {
        const bool close = !c.x.empty() && (x - c.x.back() <= 1e-12 * std::max(std::abs(x), std::abs(c.x.back())) ||
                                            std::abs(y - c.y.back()) <= 1e-12 * std::max(std::abs(y), std::abs(c.y.back())));
        if (close) continue;
        c.x.push_back(x);
        c.y.push_back(y);
    }
    return c;
}

// Keeps the points where y is finite.
template <class Fn>
Curve tabulate(const std::vector<double>& grid, Fn&& fn) {
    Curve c;
    c.x.reserve(grid.size());
    c.y.reserve(grid.size());
    for (double x : grid) {
        const double y = fn(x);
        if (std::isfinite(y)) {
            c.x.push_back(x);
            c.y.push_back(y);
        }
    }
    return c;
}

// Monotonicity of y along the curve: +1 comparisons mean increasing steps.
inline Tally monotone_tally(const Curve& c, double slack, double relative_noise = kRounding) {
    Tally t;
    for (std::size_t i = 0; i + 1 < c.x.size(); ++i) {
        const double noise = relative_noise * (std::abs(c.y[i]) + std::abs(c.y[i + 1]));
        t.add(c.x[i + 1], compare(c.y[i + 1], c.y[i], slack, noise));
    }
    return t;
}

// Monotonicity of the divided-difference slopes (convexity when nondecreasing).
inline Tally slope_tally(const Curve& c, double slack, double relative_noise = kRounding) {
    Tally t;
    const std::size_t n = c.x.size();
    if (n < 3) return t;
    std::vector<double> slope(n - 1);
    std::vector<double> noise(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dx = c.x[i + 1] - c.x[i];
        slope[i] = (c.y[i + 1] - c.y[i]) / dx;
        const double abscissa_noise = std::abs(slope[i]) * kRounding * (std::abs(c.x[i]) + std::abs(c.x[i + 1])) / dx;
        noise[i] = relative_noise * (std::abs(c.y[i]) + std::abs(c.y[i + 1])) / dx + abscissa_noise;
    }
    for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
        t.add(c.x[i + 1], compare(slope[i + 1], slope[i], slack, noise[i] + noise[i + 1]));
    }
    return t;
}

} // namespace detail

/// Evenly spaced probability levels p_lo ... p_hi.
inline std::vector<double> probability_levels(const GridSpec& spec) {
    spec.validate();
    std::vector<double> p(spec.count);
    const double step = (spec.p_hi - spec.p_lo) / static_cast<double>(spec.count - 1);
    for (std::size_t i = 0; i < spec.count; ++i) {
        p[i] = spec.p_lo + step * static_cast<double>(i);
    }
    p.back() = spec.p_hi;
    return p;
}

/// Sorts and merges abscissas closer than 1e-12 relative.
inline std::vector<double> normalize_grid(std::vector<double> xs) {
    std::erase_if(xs, [](double x) { return !std::isfinite(x); });
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (out.empty() || x - out.back() > 1e-12 * std::max(std::abs(x), std::abs(out.back()))) {
            out.push_back(x);
        }
    }
    return out;
}

/// Quantile images of the probability levels under one distribution.
template <CdfDistribution D>
std::vector<double> build_grid(const D& d, const GridSpec& spec) {
    std::vector<double> xs;
    for (double p : probability_levels(spec)) {
        xs.push_back(quantile_at(d, p));
    }
    return normalize_grid(std::move(xs));
}

/// Union of both distributions' quantile images of the probability levels.
template <CdfDistribution D1, CdfDistribution D2>
std::vector<double> build_grid(const D1& d1, const D2& d2, const GridSpec& spec) {
    std::vector<double> xs;
    const auto levels = probability_levels(spec);
    xs.reserve(2 * levels.size());
    for (double p : levels) {
        xs.push_back(quantile_at(d1, p));
        xs.push_back(quantile_at(d2, p));
    }
    return normalize_grid(std::move(xs));
}

/// Usual stochastic order decided from the odds (left <= right iff odds_left >= odds_right).
template <CdfDistribution D1, CdfDistribution D2>
OrderVerdict check_st_by_odds(const D1& left, const D2& right, const std::vector<double>& grid, const GridSpec& spec = {}) {
    detail::Tally t;
    for (double x : grid) {
        t.add(x, detail::compare(odds_of(left, x), odds_of(right, x), spec.slack));
    }
    return t.finish(Relation::st, spec);
}

/// Numeric check of `left <= right` in the given order on the abscissas of `grid`.
///
/// holds: no grid point violates the defining inequality beyond slack; reversed: the
/// opposite inequality holds everywhere; crosses: both directions are violated and the
/// witness is the first abscissa disagreeing with the first decided sign. Monotonicity-
/// based relations (lr, c, disp) compare consecutive grid points. "holds" only means that
/// no counterexample was found at this resolution.
template <CdfDistribution D1, CdfDistribution D2>
OrderVerdict check_order(Relation relation, const D1& left, const D2& right, const std::vector<double>& grid,
                         const GridSpec& spec = {}) {
    const double slack = spec.slack;
    detail::Tally t;
    switch (relation) {
    case Relation::st: {
        for (double x : grid) {
            const double s1 = left.sf(x);
            const double s2 = right.sf(x);
            // Compare whichever tail keeps relative resolution: cdfs near 0, survivals near 0.
            if (std::min(s1, s2) >= 0.5) {
                t.add(x, detail::compare(left.cdf(x), right.cdf(x), slack));
            } else {
                t.add(x, detail::compare(s2, s1, slack));
            }
        }
        auto v = t.finish(relation, spec);
        v.odds_route = check_st_by_odds(left, right, grid, spec).status;
        return v;
    }
    case Relation::hr: {
        detail::require_density(left, relation);
        detail::require_density(right, relation);
        for (double x : grid) {
            t.add(x, detail::compare(hazard_of(left, x), hazard_of(right, x), slack));
        }
        return t.finish(relation, spec);
    }
    case Relation::rh: {
        detail::require_density(left, relation);
        detail::require_density(right, relation);
        for (double x : grid) {
            const double f1 = left.cdf(x);
            const double f2 = right.cdf(x);
            if (!(f1 > 0.0) || !(f2 > 0.0)) continue;
            t.add(x, detail::compare(right.pdf(x) / f2, left.pdf(x) / f1, slack));
        }
        return t.finish(relation, spec);
    }
    case Relation::lr: {
        detail::require_density(left, relation);
        detail::require_density(right, relation);
        constexpr double kTiny = 1e-300;
        auto curve = detail::tabulate(grid, [&](double x) {
            const double f1 = left.pdf(x);
            const double f2 = right.pdf(x);
            if (!(f1 > kTiny) || !(f2 > kTiny)) return std::numeric_limits<double>::quiet_NaN();
            return std::log(f2) - std::log(f1);
        });
        // log-ratio differences are judged against slack * (1 + |value|)
        for (std::size_t i = 0; i + 1 < curve.x.size(); ++i) {
            const double a = curve.y[i + 1];
            const double b = curve.y[i];
            const double floor_abs = slack + detail::kRounding * (2.0 + std::abs(a) + std::abs(b));
            t.add(curve.x[i + 1], detail::compare(a, b, slack, floor_abs));
        }
        return t.finish(relation, spec);
    }
    case Relation::convex_transform: {
        const auto curve = detail::transform_curve(left, right, grid);
        const std::size_t n = curve.x.size();
        if (n < 3) return t.finish(relation, spec);
        // slopes of the increasing transform; each carries a relative rounding noise that is
        // unchanged when both coordinates are swapped (slope -> 1/slope)
        std::vector<double> slope(n - 1), noise(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double dx = curve.x[i + 1] - curve.x[i];
            const double dy = curve.y[i + 1] - curve.y[i];
            slope[i] = dy / dx;
            noise[i] = detail::kRounding * ((std::abs(curve.x[i]) + std::abs(curve.x[i + 1])) / std::abs(dx) +
                                            (std::abs(curve.y[i]) + std::abs(curve.y[i + 1])) / std::abs(dy));
        }
        for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
            const double r = std::max(noise[i], noise[i + 1]);
            const double floor_abs = std::isfinite(r) ? r * (std::abs(slope[i]) + std::abs(slope[i + 1]))
                                                      : std::numeric_limits<double>::infinity();
            t.add(curve.x[i + 1], detail::compare(slope[i + 1], slope[i], slack, floor_abs));
        }
        return t.finish(relation, spec);
    }
    case Relation::dispersive: {
        const auto curve = detail::transform_curve(left, right, grid);
        for (std::size_t i = 0; i + 1 < curve.x.size(); ++i) {
            const double dphi = curve.y[i + 1] - curve.y[i];
            const double dx = curve.x[i + 1] - curve.x[i];
            const double noise = detail::kRounding * (std::abs(curve.y[i]) + std::abs(curve.y[i + 1]) +
                                                      std::abs(curve.x[i]) + std::abs(curve.x[i + 1]));
            t.add(curve.x[i + 1], detail::compare(dphi, dx, slack, noise));
        }
        return t.finish(relation, spec);
    }
    }
    return t.finish(relation, spec);
}

/// Builds the union grid from `spec` and checks.
template <CdfDistribution D1, CdfDistribution D2>
OrderVerdict check_order(Relation relation, const D1& left, const D2& right, const GridSpec& spec = {}) {
    return check_order(relation, left, right, build_grid(left, right, spec), spec);
}

/// IHR/DHR from hazard monotonicity, IOR/DOR from odds-rate monotonicity, and cdf curvature.
template <CdfDistribution D>
ShapeReport classify_shape(const D& d, const std::vector<double>& grid, const GridSpec& spec = {}) {
    detail::require_density(d, Relation::hr);
    ShapeReport r;
    const auto hazard = detail::monotone_tally(detail::tabulate(grid, [&](double x) { return hazard_of(d, x); }), spec.slack);
    const auto rate = detail::monotone_tally(detail::tabulate(grid, [&](double x) { return odds_rate_of(d, x); }), spec.slack);
    r.ihr = !hazard.decreasing_seen() && hazard.valid() > 0;
    r.dhr = !hazard.increasing_seen() && hazard.valid() > 0;
    r.ior = !rate.decreasing_seen() && rate.valid() > 0;
    r.dor = !rate.increasing_seen() && rate.valid() > 0;

    // cdf curvature: slopes of F, with increments taken from whichever of F, 1-F is small.
    detail::Tally curvature;
    std::vector<double> slope;
    std::vector<double> noise;
    std::vector<double> at;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double s0 = d.sf(grid[i]);
        const double s1 = d.sf(grid[i + 1]);
        double increment = 0.0;
        double magnitude = 0.0;
        if (std::min(s0, s1) < 0.5) {
            increment = s0 - s1;
            magnitude = s0 + s1;
        } else {
            const double f0 = d.cdf(grid[i]);
            const double f1 = d.cdf(grid[i + 1]);
            increment = f1 - f0;
            magnitude = f0 + f1;
        }
        const double dx = grid[i + 1] - grid[i];
        slope.push_back(increment / dx);
        noise.push_back(detail::kRounding * magnitude / dx);
        at.push_back(grid[i + 1]);
    }
    for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
        curvature.add(at[i], detail::compare(slope[i + 1], slope[i], spec.slack, noise[i] + noise[i + 1]));
    }
    r.cdf_convex = !curvature.decreasing_seen() && curvature.valid() > 0;
    r.cdf_concave = !curvature.increasing_seen() && curvature.valid() > 0;

    if (r.ihr && r.dhr) {
        r.note = "constant hazard";
    } else if (r.ior && r.dor) {
        r.note = "constant odds rate";
    }
    return r;
}

template <CdfDistribution D>
ShapeReport classify_shape(const D& d, const GridSpec& spec = {}) {
    return classify_shape(d, build_grid(d, spec), spec);
}

/// Outcome of a pointwise sandwich lower * h_ref <= h <= upper * h_ref.
struct BoundCheck {
    bool holds = true;
    std::optional<double> witness;
    double max_violation = 0.0;  ///< relative
};

template <CdfDistribution D, CdfDistribution R>
BoundCheck check_hazard_bounds(const D& d, const R& reference, double lower, double upper,
                               const std::vector<double>& grid, double slack = 1e-10) {
    BoundCheck out;
    for (double x : grid) {
        const double h = hazard_of(d, x);
        const double href = hazard_of(reference, x);
        if (!std::isfinite(h) || !std::isfinite(href)) continue;
        const auto below = detail::compare(h, lower * href, slack);
        const auto above = detail::compare(upper * href, h, slack);
        for (const auto& c : {below, above}) {
            out.max_violation = std::max(out.max_violation, -c.rel);
            if (c.sign < 0) {
                out.holds = false;
                if (!out.witness) out.witness = x;
            }
        }
    }
    return out;
}

} // namespace domo
