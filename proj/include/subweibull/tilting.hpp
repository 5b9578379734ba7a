#ifndef SUBWEIBULL_TILTING_HPP
#define SUBWEIBULL_TILTING_HPP

#include <cmath>
#include <optional>
#include <string>

#include "subweibull/distribution.hpp"
#include "subweibull/transform.hpp"

namespace subweibull {

// The exponentially tilted law dF_theta(x) = exp(theta*x) / L(-theta) dF(x).
// Immutable; theta lies strictly inside the base's convergence interval
// (theta = 0 is always the identity tilt). `conjugate` carries the closed-form
// image when the family is tilt-closed.
struct TiltedDistribution {
    Distribution base;
    double theta = 0.0;
    double log_normalizer = 0.0;  // log L_base(-theta)
    std::optional<Distribution> conjugate;
};

// Families closed under tilting.
inline std::optional<Distribution> tilt_conjugate(const Distribution& d, double theta) {
    if (const auto* g = std::get_if<Gaussian>(&d.family()))
        return make_gaussian(g->mu + theta * g->sigma * g->sigma, g->sigma);
    if (const auto* p = std::get_if<Poisson>(&d.family()))
        return make_poisson(p->mu * std::exp(theta));
    if (const auto* e = std::get_if<Exponential>(&d.family())) {
        if (theta < e->rate) return make_exponential(e->rate - theta);
        return std::nullopt;
    }
    if (std::holds_alternative<PointMass>(d.family())) return d;
    return std::nullopt;
}

inline TiltedDistribution tilt(const Distribution& d, double theta,
                               const ToleranceConfig& tol = default_tolerances()) {
    if (theta == 0.0) return {d, 0.0, 0.0, d};
    const ConvergenceInterval ci = convergence_interval(d, tol);
    if (!ci.contains_interior(theta))
        throw TiltOutsideInterval("tilt: theta = " + std::to_string(theta) +
                                  " outside the open interval (" + std::to_string(-ci.s) + ", " +
                                  std::to_string(ci.t) + ") of " + d.family_name());
    const ExtendedReal norm = laplace_transform(d, -theta, tol);
    return {d, theta, norm.log_value(), tilt_conjugate(d, theta)};
}

inline double tilted_log_density(const TiltedDistribution& td, double x) {
    return td.theta * x - td.log_normalizer + td.base.log_density(x);
}

inline double tilted_density(const TiltedDistribution& td, double x) {
    if (td.theta == 0.0) return td.base.density(x);
    return std::exp(tilted_log_density(td, x));
}

namespace detail {

// Effective integration bracket for the tilted density: start from the base
// quantile range and extend until the tilted log density is far below the
// normalization scale on both ends (the support can shift a long way under
// large theta).
inline std::pair<double, double> tilted_bracket(const TiltedDistribution& td,
                                                const ToleranceConfig& tol) {
    const Support s = td.base.support();
    const double step0 = std::max(td.base.scale_hint(), 1.0);
    double lo = std::isfinite(s.lower) ? s.lower : td.base.quantile(1e-15);
    double hi = std::isfinite(s.upper) ? s.upper : td.base.quantile(1.0 - 1e-15);
    const double floor_log = -60.0 - std::log(step0);
    if (!std::isfinite(s.upper)) {
        double step = step0;
        while (tilted_log_density(td, hi) > floor_log && step < 1e300) {
            hi += step;
            step *= 2.0;
        }
    }
    if (!std::isfinite(s.lower)) {
        double step = step0;
        while (tilted_log_density(td, lo) > floor_log && step < 1e300) {
            lo -= step;
            step *= 2.0;
        }
    }
    (void)tol;
    return {lo, hi};
}

}  // namespace detail

// CDF of the tilted law along the numeric route (quadrature / summation of
// the tilted density); the conjugate-aware tilted_cdf below is the primary
// entry point.
inline double tilted_cdf_numeric(const TiltedDistribution& td, double x,
                                 const ToleranceConfig& tol = default_tolerances()) {
    if (td.base.is_discrete()) {
        if (x < 0.0) return 0.0;
        const std::int64_t last = static_cast<std::int64_t>(std::floor(x));
        double sum = 0.0;
        for (std::int64_t k = 0; k <= last; ++k)
            sum += std::exp(td.theta * static_cast<double>(k) - td.log_normalizer) *
                   td.base.density(static_cast<double>(k));
        return std::min(sum, 1.0);
    }
    const auto [lo, hi] = detail::tilted_bracket(td, tol);
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double log_cdf =
        log_integrate([&](double u) { return tilted_log_density(td, u); }, lo, x,
                      tol.quad_rel_tol, td.base.non_smooth_points());
    return std::min(std::exp(log_cdf), 1.0);
}

inline double tilted_cdf(const TiltedDistribution& td, double x,
                         const ToleranceConfig& tol = default_tolerances()) {
    if (td.conjugate) return td.conjugate->cdf(x);
    return tilted_cdf_numeric(td, x, tol);
}

// Exact sampling through the conjugate when available, otherwise inverse-CDF
// on the numeric tilted CDF: the bracket grows geometrically from the base
// median, and each draw is resolved by bisection on a dense monotone CDF
// table to the configured probability tolerance.
inline std::vector<double> tilted_sample(const TiltedDistribution& td, std::size_t n,
                                         std::uint64_t seed,
                                         const ToleranceConfig& tol = default_tolerances()) {
    if (td.conjugate) return td.conjugate->sample(n, seed);
    if (td.base.is_discrete()) {
        // table inversion over the tilted pmf
        UniformStream u(seed);
        std::vector<double> cum;
        double acc = 0.0;
        auto extend = [&](double target) {
            while (acc < target && cum.size() < (1u << 24)) {
                const double k = static_cast<double>(cum.size());
                acc += std::exp(td.theta * k - td.log_normalizer) * td.base.density(k);
                cum.push_back(acc);
            }
        };
        std::vector<double> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u.next();
            extend(v);
            out.push_back(static_cast<double>(
                std::lower_bound(cum.begin(), cum.end(), v) - cum.begin()));
        }
        return out;
    }
    auto [lo, hi] = detail::tilted_bracket(td, tol);
    // cumulative Simpson table of the tilted density over the bracket
    const std::size_t cells = 8192;
    const double h = (hi - lo) / static_cast<double>(cells);
    std::vector<double> cdf(cells + 1, 0.0);
    double prev_f = tilted_density(td, lo);
    for (std::size_t i = 1; i <= cells; ++i) {
        const double x1 = lo + h * static_cast<double>(i);
        const double fm = tilted_density(td, x1 - 0.5 * h);
        const double f1 = tilted_density(td, x1);
        cdf[i] = cdf[i - 1] + h / 6.0 * (prev_f + 4.0 * fm + f1);
        prev_f = f1;
    }
    const double total = cdf[cells];
    UniformStream u(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double target = u.next() * total;
        std::size_t j =
            std::lower_bound(cdf.begin(), cdf.end(), target) - cdf.begin();
        if (j == 0) j = 1;
        // bisection inside the cell down to the probability tolerance
        double a = lo + h * static_cast<double>(j - 1), b = lo + h * static_cast<double>(j);
        double pa = cdf[j - 1];
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (a + b);
            const double pm = pa + (m - a) * tilted_density(td, 0.5 * (a + m));
            if (std::abs(pm - target) < tol.probability_tol * total) {
                a = b = m;
                break;
            }
            if (pm < target) {
                pa = pm;
                a = m;
            } else {
                b = m;
            }
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// MGF of the tilted law: M_Z(t) = L_base(-theta-t) / L_base(-theta).
inline ExtendedReal tilted_mgf(const TiltedDistribution& td, double t,
                               const ToleranceConfig& tol = default_tolerances()) {
    const ExtendedReal num = laplace_transform(td.base, -(td.theta + t), tol);
    if (num.is_infinite()) return ExtendedReal::infinity();
    return ExtendedReal::from_log(num.log_value() - td.log_normalizer);
}

// Convergence interval of the tilted law recomputed from scratch by bisection
// on tilted_mgf finiteness; equals (-S - theta, T - theta) up to tolerance.
inline ConvergenceInterval tilted_convergence_interval(
    const TiltedDistribution& td, const ToleranceConfig& tol = default_tolerances()) {
    ConvergenceInterval ci;
    ci.t = detail::positive_endpoint(
        [&](double t) { return tilted_mgf(td, t, tol).is_finite(); }, tol);
    ci.s = detail::positive_endpoint(
        [&](double t) { return tilted_mgf(td, -t, tol).is_finite(); }, tol);
    return ci;
}

}  // namespace subweibull

#endif  // SUBWEIBULL_TILTING_HPP
