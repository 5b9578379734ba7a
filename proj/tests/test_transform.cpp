#include "subweibull/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace subweibull;

namespace {

ToleranceConfig numeric_only() {
    ToleranceConfig t;
    t.prefer_closed_forms = false;
    return t;
}

std::vector<Distribution> all_families() {
    return {make_gaussian(0, 1),       make_exponential(1.0),
            make_laplace(0, 1),        make_weibull(2.0, 1.0),
            make_half_normal(1.0),     make_poisson(1.0),
            make_uniform(0, 1),        make_pareto(1.0, 2.0),
            make_log_normal(0, 1),     make_point_mass(2.0),
            make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3)};
}

}  // namespace

TEST(LaplaceTransform, KnownValues) {
    const auto e1 = make_exponential(1.0);
    EXPECT_NEAR(laplace_transform(e1, 0.5).value(), 2.0 / 3.0, 1e-12);
    EXPECT_TRUE(laplace_transform(e1, -1.5).is_infinite());
    EXPECT_NEAR(laplace_transform(make_gaussian(0, 1), -2.0).value(), std::exp(2.0), 1e-8);
}

TEST(LaplaceTransform, UnityAtZeroForEveryFamily) {
    for (const auto& d : all_families()) {
        EXPECT_DOUBLE_EQ(laplace_transform(d, 0.0).log_value(), 0.0) << d.family_name();
        EXPECT_DOUBLE_EQ(laplace_transform(d, 0.0, numeric_only()).log_value(), 0.0);
    }
}

TEST(LaplaceTransform, NumericMatchesClosedFormsAt50Points) {
    // the acceptance-gate agreement check, family by family
    const ToleranceConfig num = numeric_only();
    struct Case {
        Distribution d;
        double t_lo, t_hi;
        std::function<double(double)> oracle;
    };
    std::vector<Case> cases;
    cases.push_back({make_gaussian(0, 1), -3.0, 3.0,
                     [](double t) { return oracles::gaussian_laplace(0, 1, t); }});
    cases.push_back({make_exponential(1.0), -0.95, 3.0,
                     [](double t) { return oracles::exponential_laplace(1.0, t); }});
    cases.push_back({make_laplace(0, 1), -0.95, 0.95,
                     [](double t) { return oracles::laplace_laplace(0, 1, t); }});
    cases.push_back(
        {make_poisson(1.0), -3.0, 3.0, [](double t) { return oracles::poisson_laplace(1.0, t); }});
    cases.push_back(
        {make_uniform(0, 1), -5.0, 5.0, [](double t) { return oracles::uniform_laplace(0, 1, t); }});
    for (const auto& c : cases) {
        for (int i = 1; i <= 50; ++i) {
            const double t = c.t_lo + (c.t_hi - c.t_lo) * i / 51.0;
            const double expected = c.oracle(t);
            const ExtendedReal got = laplace_transform(c.d, t, num);
            ASSERT_TRUE(got.is_finite()) << c.d.family_name() << " t=" << t;
            EXPECT_NEAR(got.value() / expected, 1.0, 1e-8) << c.d.family_name() << " t=" << t;
            // and the closed-form path agrees with the oracle too
            EXPECT_NEAR(laplace_transform(c.d, t).value() / expected, 1.0, 1e-10);
        }
    }
}

TEST(Mgf, KnownValues) {
    EXPECT_NEAR(mgf(make_poisson(1.0), 1.0).value(), std::exp(std::exp(1.0) - 1.0), 1e-10);
    for (const auto& d : all_families()) EXPECT_DOUBLE_EQ(mgf(d, 0.0).log_value(), 0.0);
    EXPECT_TRUE(mgf(make_pareto(1, 2), 0.1).is_infinite());
    EXPECT_TRUE(mgf(make_log_normal(0, 1), 0.1).is_infinite());
}

TEST(Mgf, IsLaplaceAtNegatedArgument) {
    for (const auto& d : all_families()) {
        for (double t : {-1.5, -0.3, 0.2, 0.8}) {
            const auto a = mgf(d, t);
            const auto b = laplace_transform(d, -t);
            EXPECT_EQ(a.is_finite(), b.is_finite());
            if (a.is_finite()) {
                EXPECT_DOUBLE_EQ(a.log_value(), b.log_value());
            }
        }
    }
}

TEST(ExpPowerMoment, KnownValues) {
    EXPECT_NEAR(exp_power_moment(make_exponential(1.0), 0.5, 1.0).value(), 2.0, 1e-8);
    EXPECT_TRUE(exp_power_moment(make_exponential(1.0), 1.5, 1.0).is_infinite());
    EXPECT_NEAR(exp_power_moment(make_point_mass(2.0), 3.0, 2.0).log_value(), 36.0, 1e-12);
    EXPECT_NEAR(exp_power_moment(make_gaussian(0, 1), 0.5, 2.0).value(), std::sqrt(2.0), 1e-8);
}

TEST(ExpPowerMoment, AtLeastOneAndMonotoneInLambda) {
    struct Case {
        Distribution d;
        double q, lambda_hi;
    };
    std::vector<Case> cases = {{make_gaussian(0, 1), 2.0, 1.1},
                               {make_exponential(1.0), 1.0, 1.6},
                               {make_laplace(0, 1), 1.0, 1.6},
                               {make_weibull(2.0, 1.0), 2.0, 1.6},
                               {make_half_normal(1.0), 2.0, 1.1},
                               {make_poisson(1.0), 0.5, 3.0},
                               {make_uniform(0, 1), 2.0, 3.0},
                               {make_point_mass(2.0), 1.0, 3.0},
                               {make_pareto(1, 2), 1.0, 2.0},      // infinite throughout
                               {make_log_normal(0, 1), 0.5, 2.0},  // infinite throughout
                               {make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0),
                                                       0.3),
                                1.0, 1.6}};
    for (const auto& c : cases) {
        ExtendedReal prev = ExtendedReal::from_log(0.0);
        for (int i = 1; i <= 20; ++i) {
            const double lambda = c.lambda_hi * i / 20.0;
            const ExtendedReal v = exp_power_moment(c.d, lambda, c.q);
            if (v.is_finite()) {
                EXPECT_GE(v.log_value(), 0.0) << c.d.family_name() << " lambda=" << lambda;
            }
            // nondecreasing in lambda, up to quadrature noise on the log
            EXPECT_TRUE(prev <= ExtendedReal::from_log(v.log_value() + 1e-9) || v.is_infinite())
                << c.d.family_name() << " lambda=" << lambda;
            prev = v;
        }
    }
}

TEST(ExpPowerMoment, WindowDetectorAgreesWithTailProfilesInHorizon) {
    // dual route: the pure window/ratio detector and the analytic tail
    // profiles must agree wherever the divergence is visible inside the
    // truncation horizon
    const ToleranceConfig numeric = [] {
        ToleranceConfig t;
        t.use_tail_profiles = false;
        return t;
    }();
    struct Probe {
        Distribution d;
        double q, lambda;
        bool divergent;
    };
    const double r2 = 1.0 / std::sqrt(2.0);
    std::vector<Probe> probes = {
        {make_gaussian(0, 1), 2.0, r2 - 0.05, false}, {make_gaussian(0, 1), 2.0, r2 + 0.05, true},
        {make_exponential(1.0), 1.0, 0.9, false},     {make_exponential(1.0), 1.0, 1.1, true},
        {make_laplace(0, 1), 1.0, 0.9, false},        {make_laplace(0, 1), 1.0, 1.1, true},
        {make_weibull(2, 1), 2.0, 0.95, false},       {make_weibull(2, 1), 2.0, 1.05, true},
        {make_pareto(1, 2), 0.5, 1.0, true},          {make_uniform(0, 1), 2.0, 2.0, false},
        {make_poisson(1.0), 2.0, 1.0, true},          {make_poisson(1.0), 1.0, 2.0, false}};
    for (const auto& p : probes) {
        EXPECT_EQ(exp_power_moment(p.d, p.lambda, p.q, numeric).is_infinite(), p.divergent)
            << p.d.family_name() << " window detector, lambda=" << p.lambda << " q=" << p.q;
        EXPECT_EQ(exp_power_moment(p.d, p.lambda, p.q).is_infinite(), p.divergent)
            << p.d.family_name() << " profiled detector";
    }
}

TEST(AbsoluteMoment, ValuesAndDivergence) {
    // Pareto(1,2): E X = 2, E X^2 = inf
    EXPECT_NEAR(absolute_moment(make_pareto(1, 2), 1.0).value(), 2.0, 1e-6);
    EXPECT_TRUE(absolute_moment(make_pareto(1, 2), 2.0).is_infinite());
    EXPECT_TRUE(absolute_moment(make_pareto(1, 2), 3.0).is_infinite());
    // normal absolute moments against the gamma-function oracle
    for (int p = 1; p <= 12; ++p) {
        EXPECT_NEAR(absolute_moment(make_gaussian(0, 1), p).log_value(),
                    oracles::normal_abs_moment_log(p), 1e-8)
            << "p=" << p;
    }
    // exponential: E X^p = p!
    for (int p = 1; p <= 10; ++p) {
        EXPECT_NEAR(absolute_moment(make_exponential(1.0), p).log_value(),
                    oracles::exponential_moment_log(p), 1e-8);
    }
    // PointMass: |c|^p
    EXPECT_NEAR(absolute_moment(make_point_mass(-2.0), 3.0).value(), 8.0, 1e-12);
    EXPECT_DOUBLE_EQ(absolute_moment(make_point_mass(0.0), 2.0).value(), 0.0);
}

TEST(ConvergenceInterval, KnownEndpoints) {
    const auto e = convergence_interval(make_exponential(1.0));
    EXPECT_TRUE(std::isinf(e.s));
    EXPECT_NEAR(e.t, 1.0, 2e-6);

    const auto g = convergence_interval(make_gaussian(0, 1));
    EXPECT_TRUE(std::isinf(g.s));
    EXPECT_TRUE(std::isinf(g.t));

    const auto p = convergence_interval(make_pareto(1, 2));
    EXPECT_TRUE(std::isinf(p.s));
    EXPECT_DOUBLE_EQ(p.t, 0.0);

    const auto l = convergence_interval(make_laplace(0, 1));
    EXPECT_NEAR(l.s, 1.0, 2e-6);
    EXPECT_NEAR(l.t, 1.0, 2e-6);
}

TEST(ConvergenceInterval, NumericPathMatchesClosedFormPath) {
    auto expect_same = [](double x, double y, const std::string& what) {
        if (std::isinf(x) || std::isinf(y))
            EXPECT_EQ(x, y) << what;
        else
            EXPECT_NEAR(x, y, 1e-5) << what;
    };
    for (const auto& d : {make_exponential(2.0), make_laplace(0.5, 0.5)}) {
        const auto a = convergence_interval(d);
        const auto b = convergence_interval(d, numeric_only());
        expect_same(a.t, b.t, d.family_name() + " T");
        expect_same(a.s, b.s, d.family_name() + " S");
    }
}

TEST(ConvergenceInterval, MixtureIsIntersectionOfComponentConstraints) {
    // X = -L w.p. p, X = R w.p. 1-p: MGF finite iff t < T_R and -t < T_L
    const auto d = make_two_sided_mixture(make_exponential(2.0), make_exponential(1.0), 0.3);
    const auto ci = convergence_interval(d);
    EXPECT_NEAR(ci.t, 1.0, 2e-6);
    EXPECT_NEAR(ci.s, 2.0, 2e-6);
}

TEST(TailClassification, KnownValues) {
    const auto p = tail_classification(make_pareto(1, 2));
    EXPECT_EQ(p.left, TailWeight::Light);
    EXPECT_EQ(p.right, TailWeight::Heavy);

    const auto g = tail_classification(make_gaussian(0, 1));
    EXPECT_EQ(g.left, TailWeight::Light);
    EXPECT_EQ(g.right, TailWeight::Light);

    const auto ln = tail_classification(make_log_normal(0, 1));
    EXPECT_EQ(ln.left, TailWeight::Light);
    EXPECT_EQ(ln.right, TailWeight::Heavy);
}

TEST(LaplaceTransform, LogConvexOnInteriorGrid) {
    struct Case {
        Distribution d;
        double lo, hi;
    };
    std::vector<Case> cases = {{make_gaussian(0, 1), -2.0, 2.0},
                               {make_exponential(1.0), -0.9, 3.0},
                               {make_laplace(0, 1), -0.9, 0.9},
                               {make_poisson(1.0), -2.0, 2.0},
                               {make_uniform(0, 1), -4.0, 4.0},
                               {make_weibull(2, 1), -3.0, 3.0},
                               {make_half_normal(1.0), -3.0, 3.0}};
    for (const auto& c : cases) {
        for (int i = 0; i < 10; ++i) {
            const double t1 = c.lo + (c.hi - c.lo) * i / 10.0;
            const double t2 = c.lo + (c.hi - c.lo) * (i + 3) / 13.0;
            for (double alpha : {0.25, 0.5, 0.75}) {
                const double mid = alpha * t1 + (1.0 - alpha) * t2;
                const double lhs = laplace_transform(c.d, mid).log_value();
                const double rhs = alpha * laplace_transform(c.d, t1).log_value() +
                                   (1.0 - alpha) * laplace_transform(c.d, t2).log_value();
                EXPECT_LE(lhs, rhs + 1e-8) << c.d.family_name();
            }
        }
    }
}

TEST(LaplaceTransform, MonotoneDominationOnNonnegativeLaws) {
    // for nonnegative X and 0 <= theta' <= theta: L(-theta') <= L(-theta)
    std::vector<Distribution> nonneg = {make_exponential(1.0), make_weibull(2, 1),
                                        make_half_normal(1.0), make_poisson(1.0),
                                        make_uniform(0, 1),    make_pareto(1, 2),
                                        make_log_normal(0, 1)};
    for (const auto& d : nonneg) {
        ExtendedReal prev = ExtendedReal::from_log(0.0);
        for (double theta : {0.1, 0.3, 0.6, 0.9, 1.2, 2.0}) {
            const ExtendedReal v = laplace_transform(d, -theta);
            EXPECT_TRUE(prev <= v) << d.family_name() << " theta=" << theta;
            prev = v;
        }
    }
}
