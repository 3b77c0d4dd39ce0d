#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <gtest/gtest.h>

#include "domo/baseline.hpp"
#include "domo/sampling.hpp"
#include "domo/stability.hpp"

using namespace domo;

namespace {

std::vector<BaselineDistribution> builtins() {
    return {BaselineDistribution::exponential(1.0), BaselineDistribution::exponential(3.5),
            BaselineDistribution::weibull(2.0, 1.0),  BaselineDistribution::weibull(0.7, 2.5),
            BaselineDistribution::gamma(4.0, 1.0),    BaselineDistribution::gamma(1.13, 116.6),
            BaselineDistribution::gamma(0.4, 2.0),    BaselineDistribution::standard_log_logistic()};
}

} // namespace

TEST(Baseline, ClosedFormValues) {
    const auto e = BaselineDistribution::exponential(1.0);
    EXPECT_NEAR(e.cdf(std::numbers::ln2), 0.5, 1e-15);
    EXPECT_EQ(e.cdf(0.0), 0.0);
    EXPECT_EQ(e.pdf(0.0), 1.0);
    EXPECT_NEAR(e.quantile(0.5), 0.6931472, 1e-7);
    EXPECT_NEAR(e.odds(std::numbers::ln2), 1.0, 1e-15);

    const auto l = BaselineDistribution::standard_log_logistic();
    EXPECT_DOUBLE_EQ(l.cdf(1.0), 0.5);
    EXPECT_DOUBLE_EQ(l.cdf(3.0), 0.75);
    EXPECT_DOUBLE_EQ(l.pdf(1.0), 0.25);
    EXPECT_NEAR(l.quantile(0.75), 3.0, 1e-14);

    EXPECT_EQ(BaselineDistribution::weibull(2.0, 1.0).pdf(0.0), 0.0);
}

TEST(Baseline, BelowSupport) {
    for (const auto& d : builtins()) {
        EXPECT_EQ(d.cdf(-1.0), 0.0) << d.spec();
        EXPECT_EQ(d.pdf(-1.0), 0.0) << d.spec();
        EXPECT_EQ(d.sf(-1.0), 1.0) << d.spec();
    }
}

TEST(Baseline, GammaMatchesBoost) {
    for (double shape : {0.4, 1.13, 4.0, 30.0}) {
        const double scale = 116.6;
        const auto d = BaselineDistribution::gamma(shape, scale);
        const boost::math::gamma_distribution<> ref(shape, scale);
        for (double p : {1e-9, 1e-4, 0.1, 0.5, 0.9, 1 - 1e-6}) {
            const double x = boost::math::quantile(ref, p);
            EXPECT_NEAR(d.cdf(x) / boost::math::cdf(ref, x), 1.0, 1e-12) << shape << " " << p;
            EXPECT_NEAR(d.sf(x) / boost::math::cdf(boost::math::complement(ref, x)), 1.0, 1e-11);
            EXPECT_NEAR(d.pdf(x) / boost::math::pdf(ref, x), 1.0, 1e-11);
            EXPECT_NEAR(d.quantile(p) / x, 1.0, 1e-10);
        }
    }
    // the lung cancer baseline at its median
    const auto d = BaselineDistribution::gamma(1.13, 116.6);
    EXPECT_NEAR(d.cdf(d.quantile(0.5)), 0.5, 1e-10);
    EXPECT_NEAR(d.cdf(d.isf(1e-12)), 1.0, 1e-12);
}

TEST(Baseline, WeibullMatchesBoost) {
    const boost::math::weibull_distribution<> ref(0.7, 2.5);
    const auto d = BaselineDistribution::weibull(0.7, 2.5);
    for (double x : {1e-6, 0.01, 0.3, 2.0, 15.0}) {
        EXPECT_NEAR(d.cdf(x) / boost::math::cdf(ref, x), 1.0, 1e-13);
        EXPECT_NEAR(d.pdf(x) / boost::math::pdf(ref, x), 1.0, 1e-13);
    }
}

TEST(Baseline, Validation) {
    try {
        (void)BaselineDistribution::gamma(0.0, 1.0);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "shape must be > 0");
    }
    EXPECT_THROW((void)BaselineDistribution::exponential(-1.0), ValidationError);
    EXPECT_THROW((void)BaselineDistribution::weibull(2.0, 0.0), ValidationError);
    const std::vector<double> one{1.0};
    EXPECT_THROW((void)make_baseline("cauchy", one), ParseError);
    EXPECT_THROW((void)make_baseline("gamma", one), ParseError);
    const std::vector<double> rate{2.0, 4.0};
    const auto g = make_baseline("gammarate", rate);
    EXPECT_DOUBLE_EQ(g.scale(), 0.25);
    EXPECT_EQ(g, BaselineDistribution::gamma(2.0, 0.25));
}

TEST(Baseline, QuantileDomain) {
    const auto d = BaselineDistribution::gamma(4.0, 1.0);
    EXPECT_THROW((void)d.quantile(0.0), DomainError);
    EXPECT_THROW((void)d.quantile(1.0), DomainError);
    EXPECT_THROW((void)d.quantile(std::nan("")), DomainError);
}

TEST(Baseline, ProfileIdentities) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(1e-6, 1 - 1e-6);
    for (const auto& d : builtins()) {
        for (int i = 0; i < 125; ++i) {
            const double x = d.quantile(unif(rng));
            const auto p = profile(d, x);
            EXPECT_NEAR(p.odds / (1.0 / p.survival - 1.0), 1.0, 1e-12) << d.spec() << " x=" << x;
            EXPECT_NEAR(p.hazard / (p.pdf / p.survival), 1.0, 1e-12);
            EXPECT_NEAR(d.odds_rate(x) / (p.pdf / (p.survival * p.survival)), 1.0, 1e-11);
            EXPECT_NEAR(p.reversed_hazard, p.pdf / p.cdf, 1e-12 * p.reversed_hazard);
        }
    }
    const auto l = profile(BaselineDistribution::standard_log_logistic(), 1.0);
    EXPECT_DOUBLE_EQ(l.cdf, 0.5);
    EXPECT_DOUBLE_EQ(l.pdf, 0.25);
    EXPECT_DOUBLE_EQ(l.hazard, 0.5);
    EXPECT_DOUBLE_EQ(l.odds, 1.0);
    EXPECT_DOUBLE_EQ(l.odds_rate, 1.0);
}

TEST(Baseline, OddsRateIsDerivativeOfOdds) {
    for (const auto& d : builtins()) {
        for (double p : {0.05, 0.3, 0.6, 0.9}) {
            const double x = d.quantile(p);
            const double h = 1e-5 * x;
            const double fd = (d.odds(x + h) - d.odds(x - h)) / (2 * h);
            EXPECT_NEAR(d.odds_rate(x) / fd, 1.0, 1e-5) << d.spec();
        }
    }
}

TEST(Baseline, ConstantRates) {
    const auto l = BaselineDistribution::standard_log_logistic();
    const auto e = BaselineDistribution::exponential(2.5);
    for (int i = 1; i <= 1000; ++i) {
        const double x = 0.02 * i;
        EXPECT_NEAR(l.odds_rate(x), 1.0, 1e-10);
        EXPECT_NEAR(e.hazard(x), 2.5, 2.5e-12);
    }
}

TEST(Baseline, PdfMatchesFiniteDifference) {
    for (const auto& d : builtins()) {
        for (double p : {0.1, 0.5, 0.8}) {
            const double x = d.quantile(p);
            const double h = 1e-5 * x;
            const double fd = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h);
            EXPECT_NEAR(d.pdf(x) / fd, 1.0, 1e-6) << d.spec();
        }
    }
}

TEST(Baseline, QuantileRoundTrip) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& d : builtins()) {
        for (int i = 0; i < 1000; ++i) {
            const double u = unif(rng);
            if (u <= 0.0) continue;
            EXPECT_NEAR(d.cdf(d.quantile(u)), u, 1e-10) << d.spec();
            const double x = d.quantile(u);
            EXPECT_NEAR(d.quantile(d.cdf(x)), x, 1e-9 * x + 1e-300) << d.spec();
        }
    }
}

TEST(Baseline, SamplesFollowTheCdf) {
    for (const auto& d : builtins()) {
        auto xs = sample(d, 20000, 99);
        std::sort(xs.begin(), xs.end());
        EXPECT_LT(ks_distance(xs, [&](double x) { return d.cdf(x); }), ks_critical_1pct(xs.size())) << d.spec();
    }
    const auto e = BaselineDistribution::exponential(1.0);
    EXPECT_EQ(sample(e, 50, 3), sample(e, 50, 3));
    EXPECT_NE(sample(e, 50, 3), sample(e, 50, 4));
    EXPECT_THROW((void)sample(e, 0, 1), DomainError);
}

TEST(Baseline, SpecStrings) {
    EXPECT_EQ(BaselineDistribution::exponential(1.0).spec(), "exp:1");
    EXPECT_EQ(BaselineDistribution::gamma(4.0, 1.0).spec(), "gamma:4,1");
    EXPECT_EQ(BaselineDistribution::weibull(2.0, 1.0).spec(), "weibull:2,1");
    EXPECT_EQ(BaselineDistribution::standard_log_logistic().spec(), "loglogistic");
}
