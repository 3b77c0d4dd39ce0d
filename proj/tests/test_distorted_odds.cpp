#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "domo/distorted_odds.hpp"
#include "domo/stability.hpp"
#include "oracles.hpp"

using namespace domo;

namespace {

const BaselineDistribution kExp = BaselineDistribution::exponential(1.0);

std::vector<BaselineDistribution> bases() {
    return {kExp, BaselineDistribution::weibull(2.0, 1.0), BaselineDistribution::gamma(4.0, 1.0),
            BaselineDistribution::standard_log_logistic(), BaselineDistribution::gamma(1.13, 116.6)};
}

ParamTriple random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = u(rng) < 0.2 ? 0.0 : std::exp(std::log(0.01) + u(rng) * std::log(400.0));
    const double b = std::exp(std::log(0.1) + u(rng) * std::log(100.0));
    const double t = std::exp(std::log(0.2) + u(rng) * std::log(25.0));
    return ParamTriple::make(a, b, t);
}

} // namespace

TEST(ParamTriple, Validation) {
    EXPECT_THROW((void)ParamTriple::make(-1.0, 1.0, 1.0), ValidationError);
    EXPECT_THROW((void)ParamTriple::make(0.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW((void)ParamTriple::make(0.0, 1.0, -2.0), ValidationError);
    EXPECT_THROW((void)DOMODistribution(kExp, ParamTriple{-1.0, 1.0, 1.0}), ValidationError);
    EXPECT_EQ(ParamTriple::make(0.5, 2, 3).str(), "0.5,2,3");
}

TEST(Domo, IdentityDistortion) {
    const DOMODistribution g(kExp, ParamTriple::make(0, 1, 1));
    for (double x : {0.01, 0.5, 3.0, 20.0}) {
        EXPECT_NEAR(g.cdf(x), kExp.cdf(x), 1e-15);
        EXPECT_NEAR(g.pdf(x) / kExp.pdf(x), 1.0, 1e-13);
        EXPECT_NEAR(g.hazard(x), kExp.hazard(x), 1e-13);
    }
    EXPECT_NEAR(g.quantile(0.5), std::numbers::ln2, 1e-15);
}

TEST(Domo, OddsExamples) {
    const double ln2 = std::numbers::ln2;
    EXPECT_NEAR(DOMODistribution(kExp, ParamTriple::make(1, 2, 1)).odds(ln2), 2.0, 1e-14);
    EXPECT_NEAR(DOMODistribution(kExp, ParamTriple::make(0, 1, 2)).odds(ln2), 1.0, 1e-14);
    EXPECT_NEAR(DOMODistribution(kExp, ParamTriple::make(0, 2, 1)).sf(ln2), 1.0 / 3.0, 1e-15);
    for (const auto& b : bases()) {
        const DOMODistribution g(b, ParamTriple::make(1.5, 2, 0.7));
        EXPECT_EQ(g.odds(0.0), 0.0);
        EXPECT_EQ(g.cdf(0.0), 0.0);
    }
}

TEST(Domo, PhrReduction) {
    for (double theta : {0.3, 2.0, 4.5}) {
        const DOMODistribution g(kExp, ParamTriple::make(1, 1, theta));
        for (int i = 0; i <= 2048; ++i) {
            const double x = 10.0 * i / 2048.0;
            EXPECT_NEAR(g.sf(x), std::exp(-theta * x), 1e-12);
        }
    }
    const DOMODistribution g(kExp, ParamTriple::make(1, 1, 2));
    EXPECT_NEAR(g.sf(1.0), 0.1353353, 1e-7);
    EXPECT_NEAR(g.pdf(1.0), 0.2706706, 1e-7);
    EXPECT_NEAR(g.hazard(0.3), 2.0, 1e-13);
    EXPECT_NEAR(g.hazard(7.0), 2.0, 1e-12);
    EXPECT_NEAR(g.quantile(1.0 - std::exp(-2.0)), 1.0, 1e-13);
}

TEST(Domo, MarshallOlkinReduction) {
    for (const auto& b : bases()) {
        for (double beta : {0.25, 1.0, 4.0}) {
            const DOMODistribution g(b, ParamTriple::make(0, beta, 1));
            for (double p : {0.01, 0.2, 0.5, 0.8, 0.99}) {
                const double x = b.quantile(p);
                const double s = b.sf(x);
                EXPECT_NEAR(g.sf(x) / (s / (beta * b.cdf(x) + s)), 1.0, 1e-13);
            }
        }
    }
}

TEST(Domo, DefiningIdentityAgainstOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(1e-6, 1 - 1e-6);
    const auto bs = bases();
    for (int i = 0; i < 1000; ++i) {
        const auto& b = bs[i % bs.size()];
        const auto p = random_params(rng);
        const double x = b.quantile(u(rng));
        const DOMODistribution g(b, p);
        const double ref = oracle::domo_odds(b, p, x);
        EXPECT_NEAR(g.odds(x) / ref, 1.0, 1e-11) << b.spec() << " " << p.str() << " x=" << x;
    }
}

TEST(Domo, ExplicitFormAgrees) {
    std::mt19937_64 rng(4);
    for (const auto& b : bases()) {
        for (int k = 0; k < 10; ++k) {
            const DOMODistribution g(b, random_params(rng));
            for (double p : {0.001, 0.1, 0.4, 0.7, 0.95}) {
                const double x = b.quantile(p);
                EXPECT_NEAR(g.cdf(x), g.cdf_explicit(x), 1e-12) << g.spec();
            }
        }
    }
}

TEST(Domo, HazardFactorisation) {
    std::mt19937_64 rng(8);
    for (const auto& b : bases()) {
        for (int k = 0; k < 20; ++k) {
            const auto p = random_params(rng);
            const DOMODistribution g(b, p);
            for (double q : {0.02, 0.3, 0.6, 0.9}) {
                const double x = b.quantile(q);
                const double ref = p.beta * p.theta * b.hazard(x) * t_factor(p, b.odds(x));
                EXPECT_NEAR(g.hazard(x) / ref, 1.0, 1e-11);
                const double s = g.sf(x);
                if (s > 1e-250) {
                    EXPECT_NEAR(g.hazard(x) / (g.pdf(x) / s), 1.0, 1e-11) << g.spec() << " x=" << x;
                }
            }
        }
    }
}

TEST(Domo, PdfMatchesFiniteDifference) {
    std::mt19937_64 rng(2);
    for (const auto& b : bases()) {
        for (int k = 0; k < 10; ++k) {
            const DOMODistribution g(b, random_params(rng));
            for (double q : {0.2, 0.5, 0.8}) {
                const double x = g.quantile(q);
                const double h = 1e-5 * x;
                const double fd = (g.cdf(x + h) - g.cdf(x - h)) / (2 * h);
                EXPECT_NEAR(g.pdf(x) / fd, 1.0, 1e-6) << g.spec();
            }
        }
    }
}

TEST(Domo, DensityIntegratesToOne) {
    std::mt19937_64 rng(31);
    for (const auto& b : bases()) {
        for (int k = 0; k < 4; ++k) {
            const auto p = random_params(rng);
            const DOMODistribution g(b, p);
            std::vector<double> breaks;
            for (double q : {1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999, 1 - 1e-6, 1 - 1e-9, 1 - 1e-12}) {
                breaks.push_back(g.isf(1 - q));
            }
            const double mass = oracle::total_mass([&](double x) { return g.pdf(x); }, breaks,
                                                   oracle::domo_sf(b, p, breaks.back()));
            EXPECT_NEAR(mass, 1.0, 1e-8) << g.spec();
        }
    }
}

TEST(Domo, LungCancerFitNormalised) {
    const auto base = BaselineDistribution::gamma(1.13, 116.6);
    const DOMODistribution g(base, ParamTriple::make(0, 4.4324, 0.6822));
    std::vector<double> breaks{1.0, 10.0, 100.0, 300.0, 1000.0, 3000.0, 10000.0};
    const double mass = oracle::total_mass([&](double x) { return g.pdf(x); }, breaks,
                                           oracle::domo_sf(base, g.params(), breaks.back()));
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_TRUE(std::isinf(g.pdf(0.0)));
}

TEST(Domo, QuantileRoundTrip) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& b : bases()) {
        for (int i = 0; i < 200; ++i) {
            const DOMODistribution g(b, random_params(rng));
            const double u = u01(rng);
            EXPECT_NEAR(g.cdf(g.quantile(u)), u, 1e-10) << g.spec() << " u=" << u;
        }
    }
    const DOMODistribution g(kExp, ParamTriple::make(1, 1, 2));
    EXPECT_THROW((void)g.quantile(0.0), DomainError);
    EXPECT_THROW((void)g.quantile(1.0), DomainError);
}

TEST(Domo, AuxiliaryFunctions) {
    EXPECT_DOUBLE_EQ(t_factor(ParamTriple::make(2, 1, 2), 0.0), 2.0);
    EXPECT_DOUBLE_EQ(t_factor(ParamTriple::make(0, 3, 1), 0.0), 1.0);
    EXPECT_DOUBLE_EQ(t_factor(ParamTriple::make(1, 1, 1), 5.0), 1.0);
    EXPECT_EQ(t_factor(ParamTriple::make(0, 1, 2), 0.0), 0.0);
    EXPECT_TRUE(std::isinf(t_factor(ParamTriple::make(0, 1, 0.5), 0.0)));

    EXPECT_DOUBLE_EQ(d_polynomial(ParamTriple::make(1, 1, 2), 0.0), 0.0);
    EXPECT_DOUBLE_EQ(d_polynomial(ParamTriple::make(0, 1, 1), 7.0), 0.0);
    for (double t : {0.3, 1.0, 2.5})
        for (double x : {0.0, 1.0, 9.0}) EXPECT_NEAR(d_polynomial(ParamTriple::make(1, 1, t), x), 0.0, 1e-12);
    const auto p = ParamTriple::make(0.7, 1.9, 2.3);
    EXPECT_NEAR(d_polynomial(p, 0.0), std::pow(0.7, 2.3) * 1.9 * 2.3 - 0.7 - 1.3, 1e-14);
}

TEST(Domo, HazardFactorTrend) {
    EXPECT_EQ(hazard_factor_trend(ParamTriple::make(1, 1, 3)), Trend::constant);
    EXPECT_EQ(hazard_factor_trend(ParamTriple::make(0, 0.5, 1)), Trend::increasing);
    EXPECT_EQ(hazard_factor_trend(ParamTriple::make(0, 2, 1)), Trend::decreasing);
    // check the classification against the sampled shape of T
    std::mt19937_64 rng(12);
    for (int k = 0; k < 300; ++k) {
        const auto p = random_params(rng);
        const auto trend = hazard_factor_trend(p);
        bool up = false, down = false;
        double prev = t_factor(p, 1e-6);
        for (int i = 1; i <= 400; ++i) {
            const double t = t_factor(p, 1e-6 * std::pow(1e12, i / 400.0));
            const double tol = 1e-9 * std::max(std::abs(t), std::abs(prev));
            if (t > prev + tol) up = true;
            if (t < prev - tol) down = true;
            prev = t;
        }
        if (trend == Trend::increasing) {
            EXPECT_FALSE(down) << p.str();
        }
        if (trend == Trend::decreasing) {
            EXPECT_FALSE(up) << p.str();
        }
        if (up && !down) {
            EXPECT_NE(trend, Trend::decreasing) << p.str();
        }
        if (down && !up) {
            EXPECT_NE(trend, Trend::increasing) << p.str();
        }
    }
}

TEST(Domo, HazardBoundsForOmo) {
    const DOMODistribution g(kExp, ParamTriple::make(0, 0.5, 1));
    for (int i = 0; i < 1000; ++i) {
        const double x = 0.01 * i;
        EXPECT_LE(0.5 * kExp.hazard(x), g.hazard(x) * (1 + 1e-12));
        EXPECT_LE(g.hazard(x), kExp.hazard(x) * (1 + 1e-12));
    }
}

TEST(Domo, Sampling) {
    const DOMODistribution g(kExp, ParamTriple::make(1, 1, 2));
    auto xs = g.sample(100000, 1234);
    EXPECT_EQ(xs, g.sample(100000, 1234));
    std::sort(xs.begin(), xs.end());
    EXPECT_LT(ks_distance(xs, [&](double x) { return g.cdf(x); }), ks_critical_1pct(xs.size()));
    EXPECT_THROW((void)g.sample(0, 1), DomainError);
}

TEST(Domo, SpecAndFactories) {
    EXPECT_EQ(make_omo(kExp, 2, 3).spec(), "domo:0,2,3@exp:1");
    EXPECT_EQ(make_domo(kExp, ParamTriple::make(1, 1, 2)), DOMODistribution(kExp, ParamTriple::make(1, 1, 2)));
}
