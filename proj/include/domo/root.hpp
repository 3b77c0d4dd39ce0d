#pragma once

#include <cmath>
#include <utility>

#include "errors.hpp"

namespace domo::root {

struct Result {
    double x;
    int iterations;
    bool converged;
};

/// Safeguarded Newton iteration for an increasing function on a bracket.
///
/// `fn(x)` returns {value, derivative}. The bracket must satisfy value(lo) <= 0 <= value(hi);
/// Newton steps that leave the current bracket, or that fail to halve it often enough,
/// fall back to bisection. Convergence is declared when the step or the bracket width
/// drops below `rel_tol * max(1, |x|)` in the caller's variable.
template <class Fn>
Result newton_bisect(Fn&& fn, double lo, double hi, double x0, double rel_tol = 1e-15, int max_iter = 300) {
    double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
    double step_before_last = hi - lo;
    double last_step = step_before_last;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const auto [value, slope] = fn(x);
        if (value == 0.0) {
            return {x, iter, true};
        }
        if (value < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double scale = std::max(1.0, std::abs(x));
        if (hi - lo <= rel_tol * scale) {
            return {0.5 * (lo + hi), iter, true};
        }
        double next = x - value / slope;
        // rtsafe rule: bisect when Newton leaves the bracket or is not shrinking fast enough.
        const bool outside = !std::isfinite(next) || !(next > lo && next < hi);
        const bool slow = std::abs(2.0 * value) > std::abs(step_before_last * slope);
        if (outside || slow || !(slope > 0.0)) {
            next = 0.5 * (lo + hi);
        }
        step_before_last = last_step;
        last_step = next - x;
        if (std::abs(last_step) <= rel_tol * scale) {
            return {next, iter, true};
        }
        x = next;
    }
    return {x, max_iter, false};
}

/// Walks outward from `start` in steps that double until `fn(x).first` changes sign,
/// returning {lo, hi} with value(lo) <= 0 <= value(hi) for an increasing function.
template <class Fn>
std::pair<double, double> expand_bracket(Fn&& fn, double start, double step, int max_doublings = 64) {
    double lo = start;
    double hi = start;
    double v = fn(start).first;
    if (v <= 0.0) {
        for (int i = 0; i < max_doublings; ++i) {
            lo = hi;
            hi = lo + step;
            step *= 2.0;
            if (fn(hi).first >= 0.0) {
                return {lo, hi};
            }
        }
    } else {
        for (int i = 0; i < max_doublings; ++i) {
            hi = lo;
            lo = hi - step;
            step *= 2.0;
            if (fn(lo).first <= 0.0) {
                return {lo, hi};
            }
        }
    }
    throw DomainError("root bracket not found");
}

} // namespace domo::root
