#include "subweibull/distribution.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "subweibull/quadrature.hpp"

using namespace subweibull;

namespace {

std::vector<Distribution> continuous_catalog() {
    return {make_gaussian(0.0, 1.0),
            make_gaussian(1.5, 0.7),
            make_exponential(1.0),
            make_exponential(2.0),
            make_laplace(0.0, 1.0),
            make_laplace(-0.5, 2.0),
            make_weibull(2.0, 1.0),
            make_weibull(0.8, 1.5),
            make_half_normal(1.0),
            make_uniform(0.0, 1.0),
            make_uniform(-2.0, 3.0),
            make_pareto(1.0, 2.0),
            make_log_normal(0.0, 1.0),
            make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3)};
}

}  // namespace

TEST(Density, ClosedFormValues) {
    EXPECT_NEAR(make_gaussian(0, 1).density(0.0), 1.0 / std::sqrt(2.0 * kPi), 1e-12);
    EXPECT_NEAR(make_poisson(1.0).density(0.0), std::exp(-1.0), 1e-12);
    EXPECT_DOUBLE_EQ(make_uniform(0, 1).density(2.0), 0.0);
    EXPECT_DOUBLE_EQ(make_poisson(1.0).density(0.5), 0.0);  // off the integer lattice
    EXPECT_NEAR(make_weibull(2, 1).density(1.0), 2.0 * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(make_pareto(1, 2).density(2.0), 2.0 / 8.0, 1e-12);
}

TEST(Density, IntegratesToOne) {
    for (const auto& d : continuous_catalog()) {
        const Support s = d.support();
        const double lo = std::isfinite(s.lower) ? s.lower : d.quantile(1e-14);
        const double hi = std::isfinite(s.upper) ? s.upper : d.quantile(1.0 - 1e-14);
        const double log_mass = log_integrate([&](double x) { return d.log_density(x); }, lo, hi,
                                              1e-13, d.non_smooth_points());
        EXPECT_NEAR(std::exp(log_mass), 1.0, 1e-9) << d.family_name();
    }
}

TEST(Density, PoissonMassSumsToOne) {
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) sum += make_poisson(4.0).density(k);
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Cdf, ClosedFormValues) {
    EXPECT_NEAR(make_exponential(1.0).survival(1.0), std::exp(-1.0), 1e-12);
    EXPECT_DOUBLE_EQ(make_point_mass(3.0).cdf(2.0), 0.0);
    EXPECT_DOUBLE_EQ(make_point_mass(3.0).cdf(3.0), 1.0);
    // Poisson(1) tail at 2: 1 - 2.5 e^{-1}, oracle by partial pmf summation
    const double oracle = oracles::poisson_survival(1.0, 2.0);
    EXPECT_NEAR(oracle, 1.0 - 2.5 * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(make_poisson(1.0).survival(2.0), oracle, 1e-12);
}

TEST(Cdf, SurvivalComplement) {
    for (const auto& d : continuous_catalog()) {
        for (double p : {0.05, 0.3, 0.5, 0.8, 0.99}) {
            const double x = d.quantile(p);
            EXPECT_NEAR(d.cdf(x) + d.survival(x), 1.0, 1e-12) << d.family_name();
        }
    }
}

TEST(Cdf, MonotoneWithCorrectLimits) {
    for (const auto& d : continuous_catalog()) {
        double prev = -0.1;
        for (int i = 0; i <= 100; ++i) {
            const double x = -40.0 + 0.8 * i;
            const double c = d.cdf(x);
            EXPECT_GE(c, prev - 1e-12) << d.family_name();
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
            prev = c;
        }
        EXPECT_NEAR(d.cdf(1e12), 1.0, 1e-9) << d.family_name();
        EXPECT_NEAR(d.cdf(-1e12), 0.0, 1e-12) << d.family_name();
    }
}

TEST(AbsSurvival, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(make_gaussian(0, 1).abs_survival(0.0), 1.0);
    EXPECT_NEAR(make_laplace(0, 1).abs_survival(1.0), std::exp(-1.0), 1e-12);
    EXPECT_DOUBLE_EQ(make_uniform(0, 1).abs_survival(1.0), 0.0);
}

TEST(AbsSurvival, NonincreasingAndBounded) {
    for (const auto& d : continuous_catalog()) {
        double prev = 1.0 + 1e-12;
        for (int i = 0; i <= 200; ++i) {
            const double t = 0.05 * i * d.scale_hint();
            const double v = d.abs_survival(t);
            EXPECT_LE(v, prev + 1e-12) << d.family_name();
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            prev = v;
        }
        EXPECT_NEAR(d.abs_survival(0.0), 1.0, 1e-12) << d.family_name();
    }
}

TEST(AbsSurvival, LogVersionMatchesAndReachesDeepTails) {
    const auto g = make_gaussian(0, 1);
    for (double t : {0.5, 1.0, 3.0, 8.0}) {
        EXPECT_NEAR(std::exp(g.log_abs_survival(t)), g.abs_survival(t), 1e-14);
    }
    // survival() underflows near t = 40; the log version keeps going
    const double lt = g.log_abs_survival(50.0);
    EXPECT_NEAR(lt, std::log(2.0) - 0.5 * 50.0 * 50.0 - std::log(50.0) - 0.5 * std::log(2.0 * kPi),
                0.01);
    // Poisson deep tail against the log-space oracle
    EXPECT_NEAR(make_poisson(1.0).log_abs_survival(60.0), oracles::poisson_log_survival(1.0, 60.0),
                1e-9);
}

TEST(Quantile, RoundTripsThroughCdf) {
    for (const auto& d : continuous_catalog()) {
        for (double p : {1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-6}) {
            const double x = d.quantile(p);
            EXPECT_NEAR(d.cdf(x), p, 1e-11) << d.family_name() << " p=" << p;
        }
    }
}

TEST(Quantile, PoissonInversion) {
    const auto d = make_poisson(4.0);
    for (double p : {0.01, 0.3, 0.7, 0.99}) {
        const double k = d.quantile(p);
        EXPECT_GE(d.cdf(k), p);
        if (k > 0.0) {
            EXPECT_LT(d.cdf(k - 1.0), p);
        }
    }
}

TEST(Sample, PointMassIsConstant) {
    const auto xs = make_point_mass(3.0).sample(5, 123);
    ASSERT_EQ(xs.size(), 5u);
    for (double x : xs) EXPECT_DOUBLE_EQ(x, 3.0);
}

TEST(Sample, DeterministicGivenSeed) {
    const auto a = make_gaussian(0, 1).sample(100, 42);
    const auto b = make_gaussian(0, 1).sample(100, 42);
    const auto c = make_gaussian(0, 1).sample(100, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(Sample, MeansWithinCltBounds) {
    auto mean_of = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    // 3-sigma CLT bands at n = 1e5
    EXPECT_NEAR(mean_of(make_uniform(0, 1).sample(100000, 42)), 0.5, 0.01);
    EXPECT_NEAR(mean_of(make_exponential(2.0).sample(100000, 7)), 0.5, 0.01);
}

TEST(Sample, KolmogorovSmirnovAgainstCdf) {
    for (const auto& d : continuous_catalog()) {
        const std::size_t n = 100000;
        const auto xs = d.sample(n, 1234);
        const double ks = oracles::ks_statistic(xs, [&](double x) { return d.cdf(x); });
        EXPECT_LT(ks, oracles::ks_critical_1pct(n)) << d.family_name();
    }
}

TEST(Sample, PoissonChiSquare) {
    const auto d = make_poisson(1.0);
    const auto xs = d.sample(100000, 99);
    const double stat =
        oracles::chi_square_integer(xs, 5, [&](int k) { return d.density(k); });
    EXPECT_LT(stat, 16.812);  // 1% critical value, 6 degrees of freedom
}

TEST(Split, SymmetricGaussianGivesHalfNormals) {
    const auto r = make_gaussian(0.0, 1.0).split();
    EXPECT_DOUBLE_EQ(r.p, 0.5);
    EXPECT_EQ(r.negative_part.family_name(), "half_normal");
    EXPECT_EQ(r.nonnegative_part.family_name(), "half_normal");
    EXPECT_NEAR(std::get<HalfNormal>(r.negative_part.family()).sigma, 1.0, 0.0);
}

TEST(Split, SymmetricLaplaceGivesExponentials) {
    const auto r = make_laplace(0.0, 1.0).split();
    EXPECT_DOUBLE_EQ(r.p, 0.5);
    EXPECT_EQ(r.negative_part.family_name(), "exponential");
    EXPECT_NEAR(std::get<Exponential>(r.nonnegative_part.family()).rate, 1.0, 0.0);
}

TEST(Split, DegenerateOnOneSidedLaws) {
    EXPECT_THROW(make_exponential(1.0).split(), DegenerateSplit);
    EXPECT_THROW(make_pareto(1, 2).split(), DegenerateSplit);
    EXPECT_THROW(make_poisson(1.0).split(), DegenerateSplit);
    EXPECT_THROW(make_point_mass(-3.0).split(), DegenerateSplit);
}

TEST(Split, ReconstructionIdentity) {
    // parent cdf(x) = p * survival_A(-x) for x<0; p + (1-p) * cdf_B(x) for x>=0
    std::vector<Distribution> laws = {
        make_gaussian(0.0, 1.0), make_laplace(0.0, 2.0), make_uniform(-1.0, 3.0),
        make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3),
        make_two_sided_mixture(make_weibull(2.0, 1.0), make_half_normal(1.0), 0.45)};
    for (const auto& d : laws) {
        const auto r = d.split();
        for (int i = 0; i < 100; ++i) {
            const double x = -5.0 + 0.1 * i;
            const double expected = x < 0.0
                                        ? r.p * r.negative_part.survival(-x)
                                        : r.p + (1.0 - r.p) * r.nonnegative_part.cdf(x);
            EXPECT_NEAR(d.cdf(x), expected, 1e-9) << d.family_name() << " x=" << x;
        }
        const Support sa = r.negative_part.support();
        const Support sb = r.nonnegative_part.support();
        EXPECT_GE(sa.lower, 0.0);
        EXPECT_GE(sb.lower, 0.0);
    }
}

TEST(Split, MixtureReturnsComponentsExactly) {
    const auto d = make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3);
    const auto r = d.split();
    EXPECT_DOUBLE_EQ(r.p, 0.3);
    EXPECT_NEAR(std::get<Exponential>(r.negative_part.family()).rate, 2.0, 0.0);
    EXPECT_NEAR(std::get<Exponential>(r.nonnegative_part.family()).rate, 1.0, 0.0);
}

TEST(Parameters, InvalidArgumentsRejected) {
    EXPECT_THROW(make_gaussian(0.0, -1.0), std::invalid_argument);
    EXPECT_THROW(make_exponential(0.0), std::invalid_argument);
    EXPECT_THROW(make_uniform(2.0, 2.0), std::invalid_argument);
    EXPECT_THROW(make_pareto(-1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(make_two_sided_mixture(make_exponential(1), make_exponential(1), 1.5),
                 std::invalid_argument);
    EXPECT_THROW(make_two_sided_mixture(make_gaussian(0, 1), make_exponential(1), 0.5),
                 std::invalid_argument);  // left component must live on [0, inf)
}

TEST(Moments, MeanAndVariance) {
    EXPECT_NEAR(make_weibull(2.0, 1.0).mean(), std::tgamma(1.5), 1e-12);
    EXPECT_NEAR(make_half_normal(1.0).mean(), std::sqrt(2.0 / kPi), 1e-12);
    EXPECT_NEAR(make_uniform(-2, 3).variance(), 25.0 / 12.0, 1e-12);
    EXPECT_TRUE(std::isinf(make_pareto(1.0, 1.5).variance()));
    const auto m = make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3);
    EXPECT_NEAR(m.mean(), -0.3 * 0.5 + 0.7 * 1.0, 1e-12);
}
