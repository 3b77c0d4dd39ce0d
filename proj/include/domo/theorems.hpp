#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "baseline.hpp"
#include "distorted_odds.hpp"
#include "ell.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "orders.hpp"
#include "sampling.hpp"
#include "stability.hpp"

namespace domo {

/// Concrete inputs for one theorem check: a baseline, one or two parameter triples, and
/// (for the geometric stability case) a probability and a Monte Carlo seed.
struct Scenario {
    BaselineDistribution baseline = BaselineDistribution::exponential(1.0);
    ParamTriple p;
    std::optional<ParamTriple> q;
    double prob = 0.5;
    std::uint64_t seed = 0;

    std::string str() const {
        std::string out = "baseline=" + baseline.spec() + " params=(" + p.str() + ")";
        if (q) out += " params1=(" + q->str() + ")";
        return out;
    }
};

enum class ShapeNeed { none, ihr, dhr, ior, dor, concave, convex };

inline const char* to_string(ShapeNeed n) {
    switch (n) {
    case ShapeNeed::none: return "none";
    case ShapeNeed::ihr: return "IHR";
    case ShapeNeed::dhr: return "DHR";
    case ShapeNeed::ior: return "IOR";
    case ShapeNeed::dor: return "DOR";
    case ShapeNeed::concave: return "concave cdf";
    case ShapeNeed::convex: return "convex cdf";
    }
    return "?";
}

inline bool satisfies(const ShapeReport& r, ShapeNeed n) {
    switch (n) {
    case ShapeNeed::none: return true;
    case ShapeNeed::ihr: return r.ihr;
    case ShapeNeed::dhr: return r.dhr;
    case ShapeNeed::ior: return r.ior;
    case ShapeNeed::dor: return r.dor;
    case ShapeNeed::concave: return r.cdf_concave;
    case ShapeNeed::convex: return r.cdf_convex;
    }
    return false;
}

/// Conjunction of inequalities with the smallest relative gap seen, so samplers can stay
/// away from boundaries. Exact equalities (pinned parameters) do not shrink the gap.
class Conditions {
public:
    Conditions& lt(double a, double b) { return add(a < b, a, b); }
    Conditions& le(double a, double b) { return add(a <= b, a, b); }
    Conditions& gt(double a, double b) { return add(a > b, a, b); }
    Conditions& ge(double a, double b) { return add(a >= b, a, b); }
    Conditions& require(bool v) {
        ok_ = ok_ && v;
        return *this;
    }

    bool holds() const { return ok_; }
    double margin() const { return margin_; }

    /// Either branch; the margin is taken from the branches that hold.
    static Conditions any_of(const Conditions& a, const Conditions& b) {
        Conditions out;
        out.ok_ = a.ok_ || b.ok_;
        if (a.ok_ && b.ok_) {
            out.margin_ = std::max(a.margin_, b.margin_);
        } else {
            out.margin_ = a.ok_ ? a.margin_ : b.margin_;
        }
        return out;
    }

private:
    Conditions& add(bool v, double a, double b) {
        ok_ = ok_ && v;
        if (std::isfinite(a) && std::isfinite(b) && a != b) {
            margin_ = std::min(margin_, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
        }
        return *this;
    }

    bool ok_ = true;
    double margin_ = std::numeric_limits<double>::infinity();
};

/// What one evaluation sees: the scenario, the baseline's numeric shape flags, the grid.
struct CaseInput {
    const Scenario& scenario;
    const ShapeReport& baseline_shape;
    GridSpec grid;
    std::size_t ks_tests = 1;        ///< KS tests sharing the 1% family-wise level
    std::vector<std::string>* notes = nullptr;

    const BaselineDistribution& F() const { return scenario.baseline; }
    const ParamTriple& p() const { return scenario.p; }
    const ParamTriple& q() const {
        if (!scenario.q) throw CapabilityError("scenario lacks the second parameter triple");
        return *scenario.q;
    }
    DOMODistribution G() const { return {scenario.baseline, scenario.p}; }
    DOMODistribution G1() const { return {scenario.baseline, q()}; }
    EnlargedLogLogistic K() const { return EnlargedLogLogistic(scenario.p); }
    EnlargedLogLogistic K1() const { return EnlargedLogLogistic(q()); }

    void note(std::string text) const {
        if (notes) notes->push_back(std::move(text));
    }
};

struct Check {
    bool agrees = false;
    std::string observed;
};

/// One registry entry: hypothesis predicate, expected conclusion, and how to sample it.
struct TheoremCase {
    std::string id;
    std::string hypothesis_text;
    std::string conclusion_text;
    ShapeNeed needs = ShapeNeed::none;
    bool two_params = false;
    bool monte_carlo = false;
    /// Excluded from the zero-disagreement gate (suspected misprint, reported separately).
    bool flagged = false;
    /// "literal" for the statement as printed, otherwise the name of an alternative reading.
    std::string reading = "literal";
    std::string note;
    GridSpec grid;
    std::function<void(Scenario&, UniformSource&)> pin;
    std::function<Conditions(const CaseInput&)> hypothesis;
    std::function<Check(const CaseInput&)> conclusion;
};

namespace detail {

inline double pw(double base, double exponent) { return std::pow(base, exponent); }

inline std::string witness_text(const OrderVerdict& v) {
    std::string out = to_string(v.status);
    if (v.equal) out += "(equal)";
    if (v.witness) out += "@x=" + format_number(*v.witness);
    return out;
}

template <class L, class R>
Check expect_order(Relation r, const L& left, const R& right, const GridSpec& grid, const std::string& label,
                   OrderStatus expected = OrderStatus::holds) {
    const auto v = check_order(r, left, right, grid);
    return {v.status == expected, label + "=" + witness_text(v)};
}

template <class D>
Check expect_shape(const D& d, ShapeNeed flag, const GridSpec& grid, const std::string& label) {
    const auto report = classify_shape(d, grid);
    const bool ok = satisfies(report, flag);
    return {ok, label + (ok ? " is " : " is not ") + to_string(flag)};
}

inline Check both(const Check& a, const Check& b) { return {a.agrees && b.agrees, a.observed + "; " + b.observed}; }

// D(0) sign, (1-alpha)(theta-1) sign etc. for the hazard-preservation family.
inline double curvature_sign(const ParamTriple& p) { return (1.0 - p.alpha) * (p.theta - 1.0); }

inline bool t_increasing(const ParamTriple& p) {
    const auto t = hazard_factor_trend(p);
    return t == Trend::increasing || t == Trend::constant;
}

inline bool t_decreasing(const ParamTriple& p) {
    const auto t = hazard_factor_trend(p);
    return t == Trend::decreasing || t == Trend::constant;
}

// Pointwise st conditions within the ELL family (first branch: theta < theta1).
inline Conditions ell_st1(const ParamTriple& a, const ParamTriple& b) {
    Conditions c;
    c.lt(a.theta, b.theta)
        .lt(pw(a.alpha, a.theta - 1.0) * a.beta * a.theta, pw(b.alpha, b.theta - 1.0) * b.beta * b.theta)
        .ge(b.alpha * (1.0 - a.theta) - a.alpha * (1.0 - b.theta), 0.0);
    return c;
}

inline Conditions ell_st2(const ParamTriple& a, const ParamTriple& b) {
    Conditions c;
    c.require(a.theta == b.theta)
        .lt(a.beta, b.beta)
        .lt(pw(a.alpha, a.theta - 1.0) * a.beta, pw(b.alpha, b.theta - 1.0) * b.beta)
        .gt((1.0 - a.theta) * (pw(b.alpha, a.theta) * b.beta - pw(a.alpha, a.theta) * a.beta), 0.0);
    return c;
}

// Closed-form min/max laws against the geometric mixture of survival functions.
inline Check stability_identity(const DOMODistribution& d, double prob, const std::vector<double>& grid) {
    const auto& q = d.params();
    const DOMODistribution lo(d.baseline(), ParamTriple::make(q.alpha, q.beta / prob, q.theta));
    const DOMODistribution hi(d.baseline(), ParamTriple::make(q.alpha, q.beta * prob, q.theta));
    double worst = 0.0;
    for (double x : grid) {
        const double s = d.sf(x);
        const double f = d.cdf(x);
        const double s_min = prob * s / (1.0 - (1.0 - prob) * s);
        const double f_max = prob * f / (1.0 - (1.0 - prob) * f);
        worst = std::max(worst, std::abs(s_min - lo.sf(x)) / std::max(lo.sf(x), 1e-300));
        worst = std::max(worst, std::abs(f_max - hi.cdf(x)) / std::max(hi.cdf(x), 1e-300));
    }
    return {worst < 1e-9, "identity max rel err=" + format_number(worst)};
}

inline double ks_critical(double level, std::size_t n) {
    return std::sqrt(-0.5 * std::log(level / 2.0)) / std::sqrt(static_cast<double>(n));
}

inline double log_uniform(UniformSource& u, double lo, double hi) {
    return std::exp(std::log(lo) + u() * (std::log(hi) - std::log(lo)));
}

inline std::uint64_t hash_id(std::string_view id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : id) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr std::size_t kStabilityGroups = 2000;

} // namespace detail

// the table below leaves trailing TheoremCase fields at their defaults
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmissing-field-initializers"
/// Builds the full registry. Ids are unique; some statements carry a second entry with a
/// repaired reading next to the literal one.
inline std::vector<TheoremCase> make_registry() {
    using detail::pw;
    std::vector<TheoremCase> cases;
    auto add = [&](TheoremCase c) { cases.push_back(std::move(c)); };

    auto omo_theta1 = [](Scenario& s, UniformSource&) {
        s.p.alpha = 0.0;
        s.p.theta = 1.0;
    };
    auto omo = [](Scenario& s, UniformSource&) { s.p.alpha = 0.0; };

    // --- odds-Marshall-Olkin: shape preservation ---
    add({.id = "OMO-IHR",
         .hypothesis_text = "alpha=0, theta=1, beta<=1, F IHR",
         .conclusion_text = "G IHR",
         .needs = ShapeNeed::ihr,
         .pin = omo_theta1,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0 && in.p().theta == 1.0).le(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::ihr, in.grid, "G"); }});
    add({.id = "OMO-DHR",
         .hypothesis_text = "alpha=0, theta=1, beta>=1, F DHR",
         .conclusion_text = "G DHR",
         .needs = ShapeNeed::dhr,
         .pin = omo_theta1,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0 && in.p().theta == 1.0).ge(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::dhr, in.grid, "G"); }});
    add({.id = "OMO-IOR",
         .hypothesis_text = "alpha=0, theta>=1, F IOR",
         .conclusion_text = "G IOR",
         .needs = ShapeNeed::ior,
         .pin = omo,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0).ge(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::ior, in.grid, "G"); }});

    // --- oMO against its baseline ---
    struct Cmp {
        const char* id;
        Relation r;
        bool small_beta;
    };
    for (const Cmp& m : {Cmp{"OMO-LR-1", Relation::lr, true}, Cmp{"OMO-LR-2", Relation::lr, false},
                         Cmp{"OMO-HR-1", Relation::hr, true}, Cmp{"OMO-HR-2", Relation::hr, false},
                         Cmp{"OMO-RH-1", Relation::rh, true}, Cmp{"OMO-RH-2", Relation::rh, false},
                         Cmp{"OMO-ST-1", Relation::st, true}, Cmp{"OMO-ST-2", Relation::st, false}}) {
        const std::string rel = to_string(m.r);
        add({.id = m.id,
             .hypothesis_text = m.small_beta ? "alpha=0, theta=1, beta<=1" : "alpha=0, theta=1, beta>=1",
             .conclusion_text = m.small_beta ? "F <=" + rel + " G" : "G <=" + rel + " F",
             .pin = omo_theta1,
             .hypothesis = [small = m.small_beta](const CaseInput& in) {
                 Conditions c;
                 c.require(in.p().alpha == 0.0 && in.p().theta == 1.0);
                 small ? c.le(in.p().beta, 1.0) : c.ge(in.p().beta, 1.0);
                 return c;
             },
             .conclusion = [r = m.r, small = m.small_beta, rel](const CaseInput& in) {
                 return small ? detail::expect_order(r, in.F(), in.G(), in.grid, rel + "(F,G)")
                              : detail::expect_order(r, in.G(), in.F(), in.grid, rel + "(G,F)");
             }});
    }
    add({.id = "OMO-HAZARD-BOUNDS",
         .hypothesis_text = "alpha=0, theta=1",
         .conclusion_text = "min(beta,1) h_F <= h_G <= max(beta,1) h_F",
         .pin = omo_theta1,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0 && in.p().theta == 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             const double b = in.p().beta;
             const auto G = in.G();
             const auto r = check_hazard_bounds(G, in.F(), std::min(b, 1.0), std::max(b, 1.0),
                                                build_grid(in.F(), G, in.grid), 1e-10);
             return Check{r.holds, std::string(r.holds ? "sandwich holds" : "sandwich violated") +
                                       " max rel violation=" + format_number(r.max_violation)};
         }});
    {
        // The sign change sits at baseline odds beta^(-1/(theta-1)); it is only resolvable in
        // double precision when theta stays away from 1, hence the wide grid and the sampler.
        GridSpec wide;
        wide.p_lo = 1e-14;
        wide.p_hi = 1.0 - 1e-14;
        add({.id = "OMO-NONCOMP",
             .hypothesis_text = "alpha=0, theta!=1",
             .conclusion_text = "F and G not st-comparable (crosses)",
             .grid = wide,
             .pin = [](Scenario& s, UniformSource& u) {
                 s.p.alpha = 0.0;
                 while (std::abs(s.p.theta - 1.0) < 0.1) s.p.theta = detail::log_uniform(u, 0.2, 5.0);
             },
             .hypothesis = [](const CaseInput& in) {
                 Conditions c;
                 c.require(in.p().alpha == 0.0 && in.p().theta != 1.0);
                 return c;
             },
             .conclusion = [](const CaseInput& in) {
                 const auto v = check_order(Relation::st, in.F(), in.G(), in.grid);
                 return Check{v.status == OrderStatus::crosses && v.witness && std::isfinite(*v.witness),
                              "st(F,G)=" + detail::witness_text(v)};
             }});
    }
    add({.id = "PROP-CONV-1",
         .hypothesis_text = "alpha=0, theta=1, beta>=1, F concave",
         .conclusion_text = "G concave",
         .needs = ShapeNeed::concave,
         .pin = omo_theta1,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0 && in.p().theta == 1.0).ge(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::concave, in.grid, "G"); }});
    add({.id = "PROP-CONV-2",
         .hypothesis_text = "alpha=0, theta=1, beta<=1, F convex",
         .conclusion_text = "G convex",
         .needs = ShapeNeed::convex,
         .note = "no distribution on [0,inf) has a convex cdf, so this case is never applicable",
         .pin = omo_theta1,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 0.0 && in.p().theta == 1.0).le(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::convex, in.grid, "G"); }});

    // --- distorted odds: hazard shape from the sign of D ---
    auto d0 = [](const ParamTriple& p) { return d_polynomial(p, 0.0); };
    add({.id = "DOMO-IHR-1",
         .hypothesis_text = "D(0)<0, (1-alpha)(theta-1)<0, F IHR",
         .conclusion_text = "G IHR",
         .needs = ShapeNeed::ihr,
         .hypothesis = [d0](const CaseInput& in) {
             Conditions c;
             c.lt(d0(in.p()), 0.0).lt(detail::curvature_sign(in.p()), 0.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::ihr, in.grid, "G"); }});
    add({.id = "DOMO-IHR-2",
         .hypothesis_text = "D(0)>0, (1-alpha)(theta-1)>0, F DHR",
         .conclusion_text = "G DHR",
         .needs = ShapeNeed::dhr,
         .hypothesis = [d0](const CaseInput& in) {
             Conditions c;
             c.gt(d0(in.p()), 0.0).gt(detail::curvature_sign(in.p()), 0.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::dhr, in.grid, "G"); }});
    add({.id = "DOMO-IHR-3",
         .hypothesis_text = "(alpha=1 or theta=1), beta<=1, F IHR",
         .conclusion_text = "G IHR",
         .needs = ShapeNeed::ihr,
         .pin = [](Scenario& s, UniformSource& u) { (u() < 0.5 ? s.p.alpha : s.p.theta) = 1.0; },
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 1.0 || in.p().theta == 1.0).le(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::ihr, in.grid, "G"); }});
    add({.id = "DOMO-IHR-4",
         .hypothesis_text = "(alpha=1 or theta=1), beta>=1, F DHR",
         .conclusion_text = "G DHR",
         .needs = ShapeNeed::dhr,
         .pin = [](Scenario& s, UniformSource& u) { (u() < 0.5 ? s.p.alpha : s.p.theta) = 1.0; },
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.p().alpha == 1.0 || in.p().theta == 1.0).ge(in.p().beta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::dhr, in.grid, "G"); }});
    add({.id = "DOMO-IOR",
         .hypothesis_text = "theta>=1, F IOR",
         .conclusion_text = "G IOR",
         .needs = ShapeNeed::ior,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.ge(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::ior, in.grid, "G"); }});
    add({.id = "DOMO-DOR",
         .hypothesis_text = "theta<=1, F DOR",
         .conclusion_text = "G DOR",
         .needs = ShapeNeed::dor,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.le(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.G(), ShapeNeed::dor, in.grid, "G"); }});

    // --- distorted odds against the baseline ---
    add({.id = "DOMO-ST-1",
         .hypothesis_text = "theta>1, alpha^(theta-1) beta theta>1",
         .conclusion_text = "G <=st F",
         .hypothesis = [](const CaseInput& in) {
             const auto& p = in.p();
             Conditions c;
             c.gt(p.theta, 1.0).gt(pw(p.alpha, p.theta - 1.0) * p.beta * p.theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::st, in.G(), in.F(), in.grid, "st(G,F)");
         }});
    add({.id = "DOMO-ST-2",
         .hypothesis_text = "theta<1, alpha^(theta-1) beta theta<1",
         .conclusion_text = "F <=st G",
         .hypothesis = [](const CaseInput& in) {
             const auto& p = in.p();
             Conditions c;
             c.lt(p.theta, 1.0).lt(pw(p.alpha, p.theta - 1.0) * p.beta * p.theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::st, in.F(), in.G(), in.grid, "st(F,G)");
         }});

    // The hr statement as printed uses h_G/h_F -> alpha^(theta-1) at the origin; the ratio
    // there is beta theta alpha^(theta-1). Both readings are registered.
    for (const bool corrected : {false, true}) {
        const std::string suffix = corrected ? "/corrected" : "";
        const std::string lead = corrected ? "beta theta alpha^(theta-1)" : "alpha^(theta-1)";
        auto lead_value = [corrected](const ParamTriple& p) {
            return (corrected ? p.beta * p.theta : 1.0) * pw(p.alpha, p.theta - 1.0);
        };
        add({.id = "DOMO-HR-1" + suffix,
             .hypothesis_text = lead + ">1, T increasing",
             .conclusion_text = "G <=hr F",
             .reading = corrected ? "corrected" : "literal",
             .note = corrected ? "hazard ratio at the origin is beta theta alpha^(theta-1)" : "",
             .hypothesis = [lead_value](const CaseInput& in) {
                 Conditions c;
                 c.gt(lead_value(in.p()), 1.0).require(detail::t_increasing(in.p()));
                 return c;
             },
             .conclusion = [](const CaseInput& in) {
                 return detail::expect_order(Relation::hr, in.G(), in.F(), in.grid, "hr(G,F)");
             }});
        add({.id = "DOMO-HR-2" + suffix,
             .hypothesis_text = lead + "<1, T decreasing",
             .conclusion_text = "F <=hr G",
             .reading = corrected ? "corrected" : "literal",
             .note = corrected ? "hazard ratio at the origin is beta theta alpha^(theta-1)" : "",
             .hypothesis = [lead_value](const CaseInput& in) {
                 Conditions c;
                 c.lt(lead_value(in.p()), 1.0).require(detail::t_decreasing(in.p()));
                 return c;
             },
             .conclusion = [](const CaseInput& in) {
                 return detail::expect_order(Relation::hr, in.F(), in.G(), in.grid, "hr(F,G)");
             }});
    }

    // lr: under theta>1 and F <=hr G the density ratio g/f is a product of increasing
    // factors, which gives F <=lr G; the printed conclusion is G <=lr F.
    for (const bool corrected : {false, true}) {
        const std::string suffix = corrected ? "/corrected" : "";
        add({.id = "DOMO-LR-1" + suffix,
             .hypothesis_text = "theta>1, F <=hr G (numeric)",
             .conclusion_text = corrected ? "F <=lr G" : "G <=lr F",
             .reading = corrected ? "corrected" : "literal",
             .note = "the hr hypothesis fails on the whole support since h_G/h_F -> theta; applicability is grid-limited",
             .hypothesis = [](const CaseInput& in) {
                 const auto& p = in.p();
                 Conditions c;
                 c.gt(p.theta, 1.0);
                 // h_G/h_F at the origin must not exceed 1; checked before the grid test.
                 c.require(p.beta * p.theta * pw(p.alpha, p.theta - 1.0) <= 1.0);
                 if (!c.holds()) return c;
                 const auto v = check_order(Relation::hr, in.F(), in.G(), in.grid);
                 in.note("hypothesis hr(F,G)=" + detail::witness_text(v));
                 c.require(v.status == OrderStatus::holds);
                 return c;
             },
             .conclusion = [corrected](const CaseInput& in) {
                 return corrected ? detail::expect_order(Relation::lr, in.F(), in.G(), in.grid, "lr(F,G)")
                                  : detail::expect_order(Relation::lr, in.G(), in.F(), in.grid, "lr(G,F)");
             }});
        add({.id = "DOMO-LR-2" + suffix,
             .hypothesis_text = "theta<1, G <=hr F (numeric)",
             .conclusion_text = corrected ? "G <=lr F" : "F <=lr G",
             .reading = corrected ? "corrected" : "literal",
             .note = "the hr hypothesis fails on the whole support since h_G/h_F -> theta; applicability is grid-limited",
             .hypothesis = [](const CaseInput& in) {
                 const auto& p = in.p();
                 Conditions c;
                 c.lt(p.theta, 1.0);
                 c.require(p.beta * p.theta * pw(p.alpha, p.theta - 1.0) >= 1.0);
                 if (!c.holds()) return c;
                 const auto v = check_order(Relation::hr, in.G(), in.F(), in.grid);
                 in.note("hypothesis hr(G,F)=" + detail::witness_text(v));
                 c.require(v.status == OrderStatus::holds);
                 return c;
             },
             .conclusion = [corrected](const CaseInput& in) {
                 return corrected ? detail::expect_order(Relation::lr, in.G(), in.F(), in.grid, "lr(G,F)")
                                  : detail::expect_order(Relation::lr, in.F(), in.G(), in.grid, "lr(F,G)");
             }});
    }

    add({.id = "GEOM-STABILITY",
         .hypothesis_text = "0<p<=1, N geometric on {1,2,...}",
         .conclusion_text = "min ~ G(alpha,beta/p,theta), max ~ G(alpha,beta p,theta)",
         .monte_carlo = true,
         .note = "Monte Carlo with 2000 groups per trial; KS level 1% family-wise over the sweep",
         .pin = [](Scenario& s, UniformSource& u) { s.prob = detail::log_uniform(u, 0.05, 1.0); },
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.require(in.scenario.prob > 0.0 && in.scenario.prob <= 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             const auto G = in.G();
             const double prob = in.scenario.prob;
             const auto ident = detail::stability_identity(G, prob, build_grid(G, in.grid));
             const auto r = geometric_extreme_experiment(G, prob, detail::kStabilityGroups, in.scenario.seed);
             const double crit = detail::ks_critical(0.01 / static_cast<double>(std::max<std::size_t>(in.ks_tests, 1)),
                                                     detail::kStabilityGroups);
             const bool ok = ident.agrees && r.ks_min < crit && r.ks_max < crit;
             return Check{ok, ident.observed + " ks_min=" + format_number(r.ks_min) + " ks_max=" +
                                  format_number(r.ks_max) + " critical=" + format_number(crit)};
         }});

    // --- enlarged log-logistic: shapes ---
    add({.id = "ELL-DHR",
         .hypothesis_text = "alpha+theta>1",
         .conclusion_text = "K DHR",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.gt(in.p().alpha + in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.K(), ShapeNeed::dhr, in.grid, "K"); }});
    add({.id = "ELL-IOR",
         .hypothesis_text = "theta<=1",
         .conclusion_text = "K IOR",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.le(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.K(), ShapeNeed::ior, in.grid, "K"); }});
    add({.id = "ELL-DOR",
         .hypothesis_text = "theta>=1",
         .conclusion_text = "K DOR",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.ge(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) { return detail::expect_shape(in.K(), ShapeNeed::dor, in.grid, "K"); }});

    // --- ELL: usual stochastic order ---
    auto k_st = [](const CaseInput& in) {
        return detail::expect_order(Relation::st, in.K(), in.K1(), in.grid, "st(K,K1)");
    };
    add({.id = "ELL-ST-ST1",
         .hypothesis_text = "theta<theta1, alpha^(theta-1) beta theta < alpha1^(theta1-1) beta1 theta1, "
                            "alpha1(1-theta)-alpha(1-theta1)>=0",
         .conclusion_text = "K <=st K1",
         .two_params = true,
         .hypothesis = [](const CaseInput& in) { return detail::ell_st1(in.p(), in.q()); },
         .conclusion = k_st});
    add({.id = "ELL-ST-ST2",
         .hypothesis_text = "theta=theta1, beta<beta1, alpha^(theta-1) beta < alpha1^(theta-1) beta1, "
                            "(1-theta)(alpha1^theta beta1 - alpha^theta beta)>0",
         .conclusion_text = "K <=st K1",
         .two_params = true,
         .pin = [](Scenario& s, UniformSource&) { s.q->theta = s.p.theta; },
         .hypothesis = [](const CaseInput& in) { return detail::ell_st2(in.p(), in.q()); },
         .conclusion = k_st});
    add({.id = "ELL-ST-COR-1",
         .hypothesis_text = "alpha>=alpha1>=0, theta<=1, beta1=beta, theta1=theta",
         .conclusion_text = "K <=st K1",
         .two_params = true,
         .pin = [](Scenario& s, UniformSource&) {
             s.q->beta = s.p.beta;
             s.q->theta = s.p.theta;
         },
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.require(q.beta == p.beta && q.theta == p.theta).ge(p.alpha, q.alpha).le(p.theta, 1.0);
             return c;
         },
         .conclusion = k_st});
    add({.id = "ELL-ST-COR-2",
         .hypothesis_text = "beta<=beta1, theta<=1, alpha1=alpha, theta1=theta",
         .conclusion_text = "K <=st K1",
         .two_params = true,
         .pin = [](Scenario& s, UniformSource&) {
             s.q->alpha = s.p.alpha;
             s.q->theta = s.p.theta;
         },
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.require(q.alpha == p.alpha && q.theta == p.theta).le(p.beta, q.beta).le(p.theta, 1.0);
             return c;
         },
         .conclusion = k_st});
    add({.id = "ELL-ST-COR-3",
         .hypothesis_text = "theta<theta1<=1, alpha^(theta1-theta)>theta/theta1, "
                            "(1-theta)/(alpha^theta theta)>(1-theta1)/(alpha^theta1 theta1), alpha1=alpha, beta1=beta",
         .conclusion_text = "K <=st K1",
         .two_params = true,
         .pin = [](Scenario& s, UniformSource&) {
             s.q->alpha = s.p.alpha;
             s.q->beta = s.p.beta;
         },
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.require(q.alpha == p.alpha && q.beta == p.beta)
                 .lt(p.theta, q.theta)
                 .le(q.theta, 1.0)
                 .gt(pw(p.alpha, q.theta - p.theta), p.theta / q.theta)
                 .gt((1.0 - p.theta) / (pw(p.alpha, p.theta) * p.theta), (1.0 - q.theta) / (pw(p.alpha, q.theta) * q.theta));
             return c;
         },
         .conclusion = k_st});
    auto st_either = [](const CaseInput& in) {
        return Conditions::any_of(detail::ell_st1(in.p(), in.q()), detail::ell_st2(in.p(), in.q()));
    };
    auto half_equal_theta = [](Scenario& s, UniformSource& u) {
        if (u() < 0.5) s.q->theta = s.p.theta;
    };
    add({.id = "DOMO-ODDS-POINTWISE",
         .hypothesis_text = "ELL-ST-ST1 or ELL-ST-ST2 conditions",
         .conclusion_text = "Lambda_G <= Lambda_G1 pointwise",
         .two_params = true,
         .pin = half_equal_theta,
         .hypothesis = st_either,
         .conclusion = [](const CaseInput& in) {
             const auto G = in.G();
             const auto G1 = in.G1();
             // odds_G1 >= odds_G everywhere is the odds form of G1 <=st G
             const auto v = check_st_by_odds(G1, G, build_grid(G1, G, in.grid), in.grid);
             return Check{v.status == OrderStatus::holds, "odds(G1)>=odds(G): " + detail::witness_text(v)};
         }});
    add({.id = "DOMO-ST-CROSSFAMILY",
         .hypothesis_text = "ELL-ST-ST1 or ELL-ST-ST2 conditions",
         .conclusion_text = "G1 <=st G",
         .two_params = true,
         .pin = half_equal_theta,
         .hypothesis = st_either,
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::st, in.G1(), in.G(), in.grid, "st(G1,G)");
         }});

    // --- ELL: hazard rate order ---
    auto k_hr = [](const CaseInput& in) {
        return detail::expect_order(Relation::hr, in.K(), in.K1(), in.grid, "hr(K,K1)");
    };
    add({.id = "ELL-HR-GEN",
         .hypothesis_text = "alpha,alpha1>0, beta theta alpha^(theta-1) <= beta1 theta1 alpha1^(theta1-1), "
                            "beta theta alpha^theta <= beta1 theta1 alpha1^theta1, theta<theta1, "
                            "(1-alpha1)(theta1-1)>=0, (1/alpha-1)(theta-1) <= (1/alpha1-1)(theta1-1)",
         .conclusion_text = "K <=hr K1",
         .two_params = true,
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.gt(p.alpha, 0.0)
                 .gt(q.alpha, 0.0)
                 .le(p.beta * p.theta * pw(p.alpha, p.theta - 1.0), q.beta * q.theta * pw(q.alpha, q.theta - 1.0))
                 .le(p.beta * p.theta * pw(p.alpha, p.theta), q.beta * q.theta * pw(q.alpha, q.theta))
                 .lt(p.theta, q.theta)
                 .ge((1.0 - q.alpha) * (q.theta - 1.0), 0.0)
                 .le((1.0 / p.alpha - 1.0) * (p.theta - 1.0), (1.0 / q.alpha - 1.0) * (q.theta - 1.0));
             return c;
         },
         .conclusion = k_hr});
    for (const bool corrected : {false, true}) {
        add({.id = corrected ? "ELL-HR-A0/corrected" : "ELL-HR-A0",
             .hypothesis_text = corrected ? "alpha=0, theta=1, alpha1>0, theta<theta1, (1-alpha1)(theta1-1)>=0, beta <= beta1 theta1 alpha1^(theta1-1)"
                                          : "alpha=0, 0<theta<=1, alpha1>0, theta<theta1, (1-alpha1)(theta1-1)>=0",
             .conclusion_text = "K <=hr K1",
             .two_params = true,
             .reading = corrected ? "corrected" : "literal",
             .note = corrected ? "adds the alpha->0 limit of the hazard-at-origin condition; for theta<1 the hazard of K vanishes at 0" : "",
             .pin = [corrected](Scenario& s, UniformSource&) {
                 s.p.alpha = 0.0;
                 if (corrected) s.p.theta = 1.0;
             },
             .hypothesis = [corrected](const CaseInput& in) {
                 const auto &p = in.p(), &q = in.q();
                 Conditions c;
                 c.require(p.alpha == 0.0).le(p.theta, 1.0).gt(q.alpha, 0.0).lt(p.theta, q.theta).ge((1.0 - q.alpha) * (q.theta - 1.0), 0.0);
                 if (corrected) {
                     c.require(p.theta == 1.0).le(p.beta, q.beta * q.theta * pw(q.alpha, q.theta - 1.0));
                 }
                 return c;
             },
             .conclusion = k_hr});
    }
    add({.id = "ELL-HR-THETA-EQ",
         .hypothesis_text = "alpha>alpha1>0, theta1=theta, beta alpha^(theta-1) <= beta1 alpha1^(theta-1), "
                            "theta>=1: (1-alpha) beta^(1/theta) <= (1-alpha1) beta1^(1/theta), theta<=1: beta alpha^theta < beta1 alpha1^theta",
         .conclusion_text = "K <=hr K1",
         .two_params = true,
         .pin = [](Scenario& s, UniformSource&) { s.q->theta = s.p.theta; },
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             const double t = p.theta;
             Conditions c;
             c.require(q.theta == t)
                 .gt(p.alpha, q.alpha)
                 .gt(q.alpha, 0.0)
                 .le(p.beta * pw(p.alpha, t - 1.0), q.beta * pw(q.alpha, t - 1.0));
             if (t >= 1.0) c.le((1.0 - p.alpha) * pw(p.beta, 1.0 / t), (1.0 - q.alpha) * pw(q.beta, 1.0 / t));
             if (t <= 1.0) c.lt(p.beta * pw(p.alpha, t), q.beta * pw(q.alpha, t));
             return c;
         },
         .conclusion = k_hr});
    auto a0_common = [](const ParamTriple& p, const ParamTriple& q) {
        Conditions c;
        c.require(p.alpha == 0.0 && q.theta == p.theta).gt(q.alpha, 0.0).le(pw(p.beta, 1.0 / p.theta), (1.0 - q.alpha) * pw(q.beta, 1.0 / p.theta));
        return c;
    };
    auto a0_pin = [](Scenario& s, UniformSource&) {
        s.p.alpha = 0.0;
        s.q->theta = s.p.theta;
    };
    add({.id = "ELL-HR-THETA-EQ-A0",
         .hypothesis_text = "alpha=0, theta1=theta, alpha1>0, beta^(1/theta) <= (1-alpha1) beta1^(1/theta), (1-alpha1)(theta-1)>=0",
         .conclusion_text = "K <=hr K1",
         .two_params = true,
         .pin = a0_pin,
         .hypothesis = [a0_common](const CaseInput& in) {
             auto c = a0_common(in.p(), in.q());
             c.ge((1.0 - in.q().alpha) * (in.p().theta - 1.0), 0.0);
             return c;
         },
         .conclusion = k_hr});
    // (1-alpha1)(theta-1) < 0 branch as printed; "beta_a" only enters the stationary point, read as beta1.
    auto neg_base = [a0_common](const ParamTriple& p, const ParamTriple& q) {
        auto c = a0_common(p, q);
        c.lt((1.0 - q.alpha) * (p.theta - 1.0), 0.0);
        return c;
    };
    add({.id = "ELL-HR-THETA-EQ-A0-NEG",
         .hypothesis_text = "alpha=0, theta1=theta, alpha1>0, beta^(1/theta) <= (1-alpha1) beta1^(1/theta), (1-alpha1)(theta-1)<0, printed bound",
         .conclusion_text = "K <=hr K1",
         .two_params = true,
         .flagged = true,
         .reading = "printed",
         .note = "suspected misprint (beta_a); the branch forces theta<1 where the hazard of K vanishes at 0",
         .pin = a0_pin,
         .hypothesis = [neg_base](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             const double t = p.theta;
             const double e = 1.0 - 1.0 / t;
             const double a1t = pw(q.alpha, t);
             auto c = neg_base(p, q);
             c.ge(q.alpha + (1.0 - q.alpha) * pw(q.beta, e) * (pw(1.0 - a1t, e) - p.beta) / pw(q.beta * (1.0 - a1t) - p.beta, e), 0.0);
             return c;
         },
         .conclusion = k_hr});
    add({.id = "ELL-HR-THETA-EQ-A0-NEG/vertex",
         .hypothesis_text = "(1-alpha1)(theta-1)<0 with V(x0)>=0 at the stationary point x0 = beta beta1 alpha1^theta/(beta1(1-alpha1)^theta-beta)",
         .conclusion_text = "K <=hr K1",
         .two_params = true,
         .flagged = true,
         .reading = "beta_a=beta1, V(x0)>=0",
         .note = "suspected misprint (beta_a); evaluates the minimum condition the argument relies on",
         .pin = a0_pin,
         .hypothesis = [neg_base](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             const double t = p.theta;
             const double a1t = pw(q.alpha, t);
             auto c = neg_base(p, q);
             // root of x/(x + beta1 alpha1^theta) = beta / (beta1 (1-alpha1)^theta)
             const double x0 = p.beta * q.beta * a1t / (q.beta * pw(1.0 - q.alpha, t) - p.beta);
             const double e = 1.0 - 1.0 / t;
             const double v = q.beta * a1t * t + (1.0 - q.alpha) * q.beta * t * pw(x0 / q.beta + a1t, e) - p.beta * t * pw(x0 / p.beta, e);
             c.gt(x0, 0.0).ge(v, 0.0);
             return c;
         },
         .conclusion = k_hr});

    // --- convex transform order ---
    add({.id = "ELL-CTO-1",
         .hypothesis_text = "theta<=theta1, alpha(theta1-1)+alpha1(1-theta)>=0",
         .conclusion_text = "K <=c K1",
         .two_params = true,
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.le(p.theta, q.theta).ge(p.alpha * (q.theta - 1.0) + q.alpha * (1.0 - p.theta), 0.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::convex_transform, in.K(), in.K1(), in.grid, "c(K,K1)");
         }});
    add({.id = "ELL-CTO-2",
         .hypothesis_text = "theta>=theta1, alpha(theta1-1)+alpha1(1-theta)<=0",
         .conclusion_text = "K1 <=c K",
         .two_params = true,
         .hypothesis = [](const CaseInput& in) {
             const auto &p = in.p(), &q = in.q();
             Conditions c;
             c.ge(p.theta, q.theta).le(p.alpha * (q.theta - 1.0) + q.alpha * (1.0 - p.theta), 0.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::convex_transform, in.K1(), in.K(), in.grid, "c(K1,K)");
         }});
    add({.id = "ELL-CTO-COR-1",
         .hypothesis_text = "theta>=1",
         .conclusion_text = "K(0,beta,1) <=c K <=c K(0,beta,theta)",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.ge(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             const auto& p = in.p();
             const EnlargedLogLogistic L(ParamTriple::make(0.0, p.beta, 1.0));
             const EnlargedLogLogistic top(ParamTriple::make(0.0, p.beta, p.theta));
             return detail::both(detail::expect_order(Relation::convex_transform, L, in.K(), in.grid, "c(L,K)"),
                                 detail::expect_order(Relation::convex_transform, in.K(), top, in.grid, "c(K,K0)"));
         }});
    add({.id = "ELL-CTO-COR-2",
         .hypothesis_text = "theta<=1",
         .conclusion_text = "K(0,beta,theta) <=c K <=c K(0,beta,1)",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.le(in.p().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             const auto& p = in.p();
             const EnlargedLogLogistic L(ParamTriple::make(0.0, p.beta, 1.0));
             const EnlargedLogLogistic bottom(ParamTriple::make(0.0, p.beta, p.theta));
             return detail::both(detail::expect_order(Relation::convex_transform, bottom, in.K(), in.grid, "c(K0,K)"),
                                 detail::expect_order(Relation::convex_transform, in.K(), L, in.grid, "c(K,L)"));
         }});
    add({.id = "IOR-NESTING",
         .hypothesis_text = "F <=c K(0,beta,1) (numeric), theta>=1",
         .conclusion_text = "F <=c K",
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.ge(in.p().theta, 1.0);
             if (!c.holds()) return c;
             const EnlargedLogLogistic L(ParamTriple::make(0.0, in.p().beta, 1.0));
             const auto v = check_order(Relation::convex_transform, in.F(), L, in.grid);
             in.note("hypothesis c(F,L)=" + detail::witness_text(v));
             c.require(v.status == OrderStatus::holds);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::convex_transform, in.F(), in.K(), in.grid, "c(F,K)");
         }});
    add({.id = "CROSS-CTO-1",
         .hypothesis_text = "F IOR, theta>=1, theta1>=1",
         .conclusion_text = "G <=c K1",
         .needs = ShapeNeed::ior,
         .two_params = true,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.ge(in.p().theta, 1.0).ge(in.q().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::convex_transform, in.G(), in.K1(), in.grid, "c(G,K1)");
         }});
    add({.id = "CROSS-CTO-2",
         .hypothesis_text = "F DOR, theta<=1, theta1<=1",
         .conclusion_text = "K1 <=c G",
         .needs = ShapeNeed::dor,
         .two_params = true,
         .hypothesis = [](const CaseInput& in) {
             Conditions c;
             c.le(in.p().theta, 1.0).le(in.q().theta, 1.0);
             return c;
         },
         .conclusion = [](const CaseInput& in) {
             return detail::expect_order(Relation::convex_transform, in.K1(), in.G(), in.grid, "c(K1,G)");
         }});

    // --- dispersive order. The printed product uses alpha^(theta1-1); the slope of
    // K1^{-1} o G at 0 involves alpha1^(theta1-1). Both are registered, the printed one flagged.
    for (const bool alpha1 : {false, true}) {
        const std::string suffix = alpha1 ? "/alpha1" : "";
        const std::string second = alpha1 ? "alpha1^(theta1-1)" : "alpha^(theta1-1)";
        auto product = [alpha1](const CaseInput& in) {
            const auto &p = in.p(), &q = in.q();
            const double f0 = in.F().pdf(0.0);
            return p.beta * q.beta * p.theta * q.theta * f0 * pw(p.alpha, p.theta - 1.0) *
                   pw(alpha1 ? q.alpha : p.alpha, q.theta - 1.0);
        };
        add({.id = "CROSS-DISP-1" + suffix,
             .hypothesis_text = "F IOR, theta,theta1>=1, beta beta1 theta theta1 f(0) alpha^(theta-1) " + second + ">=1",
             .conclusion_text = "G <=disp K1",
             .needs = ShapeNeed::ior,
             .two_params = true,
             .flagged = !alpha1,
             .reading = alpha1 ? "alpha1" : "literal",
             .note = alpha1 ? "" : "suspected misprint: alpha in the second power",
             .hypothesis = [product](const CaseInput& in) {
                 Conditions c;
                 c.ge(in.p().theta, 1.0).ge(in.q().theta, 1.0).ge(product(in), 1.0);
                 return c;
             },
             .conclusion = [](const CaseInput& in) {
                 return detail::expect_order(Relation::dispersive, in.G(), in.K1(), in.grid, "disp(G,K1)");
             }});
        add({.id = "CROSS-DISP-2" + suffix,
             .hypothesis_text = "F DOR, theta,theta1<=1, beta beta1 theta theta1 f(0) alpha^(theta-1) " + second + "<=1",
             .conclusion_text = "K1 <=disp G",
             .needs = ShapeNeed::dor,
             .two_params = true,
             .flagged = !alpha1,
             .reading = alpha1 ? "alpha1" : "literal",
             .note = alpha1 ? "" : "suspected misprint: alpha in the second power",
             .hypothesis = [product](const CaseInput& in) {
                 Conditions c;
                 c.le(in.p().theta, 1.0).le(in.q().theta, 1.0).le(product(in), 1.0);
                 return c;
             },
             .conclusion = [](const CaseInput& in) {
                 return detail::expect_order(Relation::dispersive, in.K1(), in.G(), in.grid, "disp(K1,G)");
             }});
    }
    return cases;
}
#pragma GCC diagnostic pop

inline const std::vector<TheoremCase>& list_cases() {
    static const std::vector<TheoremCase> registry = make_registry();
    return registry;
}

inline const TheoremCase& find_case(std::string_view id) {
    for (const auto& c : list_cases()) {
        if (c.id == id) return c;
    }
    throw ParseError("unknown theorem case '" + std::string(id) + "'");
}

/// Shape flags of the built-in baselines are computed once on the default grid.
inline const ShapeReport& baseline_shape(const BaselineDistribution& b) {
    static std::mutex mu;
    static std::map<std::string, ShapeReport> cache;
    std::lock_guard lock(mu);
    const auto key = b.spec();
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, classify_shape(b)).first;
    }
    return it->second;
}

inline Conditions evaluate_conditions(const TheoremCase& c, const Scenario& s, std::vector<std::string>* notes = nullptr,
                                      std::size_t ks_tests = 1) {
    if (c.two_params && !s.q) {
        throw CapabilityError("case " + c.id + " needs a second parameter triple");
    }
    const auto& shape = baseline_shape(s.baseline);
    if (!satisfies(shape, c.needs)) {
        Conditions no;
        no.require(false);
        return no;
    }
    const CaseInput in{s, shape, c.grid, ks_tests, notes};
    return c.hypothesis(in);
}

inline bool evaluate_hypotheses(std::string_view id, const Scenario& s) {
    return evaluate_conditions(find_case(id), s).holds();
}

struct CaseReport {
    std::string id;
    std::string reading;
    bool flagged = false;
    Scenario scenario;
    bool applicable = false;
    bool agreement = true;  ///< vacuously true when not applicable
    std::string expected;
    std::string observed;
    std::vector<std::string> notes;
};

/// Checks one scenario. With the hypothesis false the report is "not applicable".
inline CaseReport verify_case(const TheoremCase& c, const Scenario& s, std::optional<GridSpec> grid = std::nullopt,
                              std::size_t ks_tests = 1) {
    CaseReport r;
    r.id = c.id;
    r.reading = c.reading;
    r.flagged = c.flagged;
    r.scenario = s;
    r.expected = c.conclusion_text;
    TheoremCase local = c;
    if (grid) local.grid = *grid;
    const auto hyp = evaluate_conditions(local, s, &r.notes, ks_tests);
    r.applicable = hyp.holds();
    if (!r.applicable) {
        r.observed = "not applicable";
        return r;
    }
    const auto& shape = baseline_shape(s.baseline);
    const CaseInput in{s, shape, local.grid, ks_tests, &r.notes};
    const auto check = local.conclusion(in);
    r.agreement = check.agrees;
    r.observed = check.observed;
    return r;
}

inline CaseReport verify_case(std::string_view id, const Scenario& s, std::optional<GridSpec> grid = std::nullopt) {
    return verify_case(find_case(id), s, grid);
}

struct SweepConfig {
    std::size_t trials = 200;
    double alpha_lo = 0.0;
    double alpha_hi = 4.0;
    double beta_lo = 0.1;
    double beta_hi = 10.0;
    double theta_lo = 0.2;
    double theta_hi = 5.0;
    std::vector<std::string> case_ids;  ///< empty: every case
    unsigned threads = 0;               ///< 0: DOMO_THREADS or 1
    double boundary_margin = 1e-3;
    std::size_t max_draws = 64;
};

struct CaseSummary {
    std::string id;
    std::string reading;
    bool flagged = false;
    std::string note;
    std::size_t trials = 0;
    std::size_t applicable = 0;
    std::size_t agreements = 0;
    std::vector<CaseReport> disagreements;
};

struct SweepReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<CaseSummary> cases;

    std::size_t disagreements(bool include_flagged) const {
        std::size_t n = 0;
        for (const auto& c : cases) {
            if (include_flagged || !c.flagged) n += c.disagreements.size();
        }
        return n;
    }
};

inline const std::vector<BaselineDistribution>& sweep_baselines() {
    static const std::vector<BaselineDistribution> b = {
        BaselineDistribution::exponential(1.0), BaselineDistribution::weibull(2.0, 1.0),
        BaselineDistribution::gamma(4.0, 1.0), BaselineDistribution::standard_log_logistic()};
    return b;
}

inline ParamTriple draw_params(const SweepConfig& cfg, UniformSource& u) {
    ParamTriple p;
    const double a_lo = std::max(cfg.alpha_lo, 0.01);
    const double pick = u();
    if (cfg.alpha_lo <= 0.0 && pick < 0.15) {
        p.alpha = 0.0;
    } else if (cfg.alpha_lo <= 1.0 && cfg.alpha_hi >= 1.0 && pick < 0.25) {
        p.alpha = 1.0;
    } else {
        p.alpha = detail::log_uniform(u, a_lo, cfg.alpha_hi);
    }
    p.beta = detail::log_uniform(u, cfg.beta_lo, cfg.beta_hi);
    if (cfg.theta_lo <= 1.0 && cfg.theta_hi >= 1.0 && u() < 0.10) {
        p.theta = 1.0;
    } else {
        p.theta = detail::log_uniform(u, cfg.theta_lo, cfg.theta_hi);
    }
    return p;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::string_view id, std::size_t trial) {
    return mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(trial)) ^ detail::hash_id(id));
}

/// Draws a scenario for one trial: rejection sampling toward an applicable scenario whose
/// inequalities clear the boundary margin; the last draw is kept when none qualifies.
inline Scenario sample_scenario(const TheoremCase& c, const SweepConfig& cfg, std::uint64_t seed, std::size_t trial) {
    UniformSource u(trial_seed(seed, c.id, trial));
    const auto& bases = sweep_baselines();
    Scenario s;
    s.baseline = bases[trial % bases.size()];
    const auto& shape = baseline_shape(s.baseline);
    for (std::size_t k = 0; k < cfg.max_draws; ++k) {
        s.p = draw_params(cfg, u);
        s.q = c.two_params ? std::optional<ParamTriple>(draw_params(cfg, u)) : std::nullopt;
        s.seed = mix_seed(u.engine()());
        if (c.pin) c.pin(s, u);
        if (!satisfies(shape, c.needs)) break;  // no parameter draw can help
        const auto hyp = evaluate_conditions(c, s);
        if (hyp.holds() && hyp.margin() >= cfg.boundary_margin) break;
    }
    return s;
}

inline unsigned sweep_threads(const SweepConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("DOMO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1;
}

/// Randomized cross-validation of every selected case. Deterministic for a given seed
/// regardless of the thread count: each (case, trial) owns its derived seed and results are
/// merged by index.
inline SweepReport run_sweep(const SweepConfig& cfg, std::uint64_t seed) {
    if (cfg.trials == 0) {
        throw DomainError("trials must be >= 1");
    }
    std::vector<const TheoremCase*> selected;
    if (cfg.case_ids.empty()) {
        for (const auto& c : list_cases()) selected.push_back(&c);
    } else {
        for (const auto& id : cfg.case_ids) selected.push_back(&find_case(id));
    }
    for (const auto& b : sweep_baselines()) baseline_shape(b);

    const std::size_t ks_tests = 2 * cfg.trials;
    const std::size_t total = selected.size() * cfg.trials;
    std::vector<CaseReport> results(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                const auto& c = *selected[i / cfg.trials];
                const std::size_t trial = i % cfg.trials;
                results[i] = verify_case(c, sample_scenario(c, cfg, seed, trial), std::nullopt, ks_tests);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::min<unsigned>(sweep_threads(cfg), static_cast<unsigned>(std::max<std::size_t>(total, 1)));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SweepReport report;
    report.seed = seed;
    report.trials = cfg.trials;
    for (std::size_t k = 0; k < selected.size(); ++k) {
        CaseSummary summary;
        summary.id = selected[k]->id;
        summary.reading = selected[k]->reading;
        summary.flagged = selected[k]->flagged;
        summary.note = selected[k]->note;
        summary.trials = cfg.trials;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            auto& r = results[k * cfg.trials + t];
            if (!r.applicable) continue;
            ++summary.applicable;
            if (r.agreement) {
                ++summary.agreements;
            } else {
                summary.disagreements.push_back(std::move(r));
            }
        }
        report.cases.push_back(std::move(summary));
    }
    return report;
}

} // namespace domo
