#ifndef SUBWEIBULL_SUBWEIBULL_HPP
#define SUBWEIBULL_SUBWEIBULL_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "subweibull/distribution.hpp"
#include "subweibull/tilting.hpp"
#include "subweibull/transform.hpp"

namespace subweibull {

// Verdict for one (distribution, q) cell. Strict means the exponential power
// moment is finite for every lambda (R_q = +inf); Broad carries the finite
// radius; NotSubweibull means R_q = 0. K1/K2/K3 are the tail-bound, moment
// growth and Orlicz-type constants, filled when the law is subweibull at q.
struct SubweibullReport {
    enum class Verdict { Strict, Broad, NotSubweibull };
    double q = 0.0;
    Verdict verdict = Verdict::NotSubweibull;
    double r_q = 0.0;  // +inf for Strict, 0 for NotSubweibull
    std::optional<double> k1, k2, k3;
    // Whether E[exp(R_q^q |X|^q)] is finite at lambda = R_q exactly, from the
    // analytic endpoint catalog (quadrature cannot decide the endpoint).
    std::optional<bool> boundary_attained;
};

struct PreservationReport {
    double q = 0.0;
    double theta = 0.0;
    double r_base = 0.0;
    double r_tilted = 0.0;
    double relative_gap = 0.0;
};

// ---------------------------------------------------------------------------
// Radius of convergence R_q = sup{lambda > 0 : E[exp(lambda^q |X|^q)] < inf}.
//
// The map lambda -> finiteness is monotone (the moment is nondecreasing in
// lambda), so bisection on the verdict is sound. The bracket grows
// geometrically from lambda = 1; finiteness at radius_lambda_max means +inf,
// divergence at radius_lambda_min means 0.
// ---------------------------------------------------------------------------
inline double estimate_radius_of(const std::function<bool(double)>& finite_at,
                                 const ToleranceConfig& tol) {
    double lo, hi;
    if (finite_at(1.0)) {
        lo = 1.0;
        double probe = 2.0;
        while (probe < tol.radius_lambda_max && finite_at(probe)) {
            lo = probe;
            probe *= 2.0;
        }
        if (probe >= tol.radius_lambda_max) {
            if (finite_at(tol.radius_lambda_max)) return kPosInf;
            hi = tol.radius_lambda_max;
        } else {
            hi = probe;
        }
    } else {
        hi = 1.0;
        double probe = 0.5;
        while (probe > tol.radius_lambda_min && !finite_at(probe)) {
            hi = probe;
            probe *= 0.5;
        }
        if (probe <= tol.radius_lambda_min) {
            if (!finite_at(tol.radius_lambda_min)) return 0.0;
            lo = tol.radius_lambda_min;
        } else {
            lo = probe;
        }
    }
    while (hi - lo > tol.radius_tol) {
        const double mid = 0.5 * (lo + hi);
        if (finite_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double estimate_radius(const Distribution& d, double q,
                              const ToleranceConfig& tol = default_tolerances()) {
    if (!(q > 0.0)) throw std::invalid_argument("estimate_radius: q must be positive");
    if (std::holds_alternative<PointMass>(d.family())) return kPosInf;  // bounded law
    return estimate_radius_of(
        [&](double lambda) { return exp_power_moment(d, lambda, q, tol).is_finite(); }, tol);
}

// Radius of the tilted law along the numeric route: the weighted moment
// carries the factor exp(theta x - log_normalizer) inside the integrand and
// reuses the divergence detector unchanged.
inline double estimate_radius_tilted(const TiltedDistribution& td, double q,
                                     const ToleranceConfig& tol = default_tolerances()) {
    if (td.conjugate) return estimate_radius(*td.conjugate, q, tol);
    return estimate_radius_of(
        [&](double lambda) {
            return exp_power_moment_weighted(td.base, lambda, q, td.theta, td.log_normalizer, tol)
                .is_finite();
        },
        tol);
}

// ---------------------------------------------------------------------------
// Tail-bound, moment-growth and Orlicz-type constants.
// ---------------------------------------------------------------------------

// Result of a pointwise inequality scan; `violation` holds the first grid
// point where the inequality failed.
struct CheckResult {
    bool holds = true;
    std::optional<double> violation;
};

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    g.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    return g;
}

// Does Pr(|X| > t) <= 2 exp(-(t/K)^q) hold along the grid?
inline CheckResult tail_bound_check(const Distribution& d, double q, double K,
                                    const std::vector<double>& t_grid) {
    if (!(K > 0.0)) throw std::invalid_argument("tail_bound_check: K must be positive");
    for (double t : t_grid) {
        const double lhs = d.log_abs_survival(t);
        const double rhs = kLogTwo - std::pow(t / K, q);
        if (lhs > rhs + 1e-12) return {false, t};
    }
    return {true, std::nullopt};
}

// Smallest K for which the tail bound holds on [0, t_max], by bisection; the
// survival curve is evaluated once per grid point.
inline double smallest_tail_constant(const Distribution& d, double q, double t_max,
                                     const ToleranceConfig& tol = default_tolerances()) {
    (void)tol;
    const std::size_t n = 2000;
    std::vector<double> ts = uniform_grid(0.0, t_max, n);
    std::vector<double> log_surv;
    log_surv.reserve(n);
    for (double t : ts) log_surv.push_back(d.log_abs_survival(t));
    auto holds = [&](double K) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (log_surv[i] > kLogTwo - std::pow(ts[i] / K, q) + 1e-12) return false;
        return true;
    };
    double hi = 1.0;
    while (!holds(hi) && hi < 1e12) hi *= 2.0;
    double lo = 0.5 * hi;
    while (holds(lo) && lo > 1e-12) lo *= 0.5;  // bracket: lo violated, hi holds
    if (lo <= 1e-12) return lo;  // bound holds for arbitrarily small K
    while ((hi - lo) / hi > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// max over p = 1..p_max of (E|X|^p)^{1/p} / p^{1/q}. Throws MomentDivergence
// when some absolute moment is infinite (heavy-tail input, not subweibull at
// any exponent).
inline double moment_growth_constant(const Distribution& d, double q, int p_max,
                                     const ToleranceConfig& tol = default_tolerances()) {
    if (p_max < 1) throw std::invalid_argument("moment_growth_constant: p_max must be >= 1");
    double best = 0.0;
    for (int p = 1; p <= p_max; ++p) {
        const ExtendedReal m = absolute_moment(d, p, tol);
        if (m.is_infinite())
            throw MomentDivergence("moment_growth_constant: E|X|^" + std::to_string(p) +
                                   " diverges for " + d.family_name());
        const double ratio =
            std::exp(m.log_value() / static_cast<double>(p)) / std::pow(p, 1.0 / q);
        best = std::max(best, ratio);
    }
    return best;
}

// Does E[exp(lambda^q |X|^q)] <= exp((K3 lambda)^q) hold along the grid
// (grid expected inside (0, 1/K3])?
inline CheckResult orlicz_check(const Distribution& d, double q, double K3,
                                const std::vector<double>& lambda_grid,
                                const ToleranceConfig& tol = default_tolerances()) {
    if (!(K3 > 0.0)) throw std::invalid_argument("orlicz_check: K3 must be positive");
    for (double lambda : lambda_grid) {
        const ExtendedReal lhs = exp_power_moment(d, lambda, q, tol);
        const double rhs = std::pow(K3 * lambda, q);
        if (lhs.is_infinite() || lhs.log_value() > rhs + 1e-12) return {false, lambda};
    }
    return {true, std::nullopt};
}

// Smallest K3 passing orlicz_check on the default 20-point grid over
// (0, 1/K3]; monotone in K3 (a larger K3 both weakens the bound and shrinks
// the grid), so bisection applies.
inline double smallest_orlicz_constant(const Distribution& d, double q,
                                       const ToleranceConfig& tol = default_tolerances()) {
    auto holds = [&](double K3) {
        return orlicz_check(d, q, K3, uniform_grid(0.0, 1.0 / K3, 20), tol).holds;
    };
    double hi = 1.0;
    while (!holds(hi) && hi < 1e9) hi *= 2.0;
    if (hi >= 1e9) return hi;
    double lo = 0.5 * hi;
    while (holds(lo) && lo > 1e-9) lo *= 0.5;  // bracket: lo violated, hi holds
    if (lo <= 1e-9) return lo;
    while ((hi - lo) / hi > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Asymptotic diagnostics. Both return the raw sequences; bounded-above is
// evidence for the subweibull property, divergence against. Interpretation is
// the caller's job.
// ---------------------------------------------------------------------------

// (t, log Pr(|X| > t) + lambda t^q) along the grid.
inline std::vector<std::pair<double, double>> limsup_tail_diagnostic(
    const Distribution& d, double q, double lambda, const std::vector<double>& t_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (double t : t_grid)
        out.emplace_back(t, d.log_abs_survival(t) + lambda * std::pow(t, q));
    return out;
}

// (p, (E|X|^p)^{1/p} / p^{1/q}) along the grid; throws MomentDivergence on an
// infinite moment.
inline std::vector<std::pair<int, double>> limsup_moment_diagnostic(
    const Distribution& d, double q, const std::vector<int>& p_grid,
    const ToleranceConfig& tol = default_tolerances()) {
    std::vector<std::pair<int, double>> out;
    out.reserve(p_grid.size());
    for (int p : p_grid) {
        const ExtendedReal m = absolute_moment(d, p, tol);
        if (m.is_infinite())
            throw MomentDivergence("limsup_moment_diagnostic: E|X|^" + std::to_string(p) +
                                   " diverges for " + d.family_name());
        out.emplace_back(p, std::exp(m.log_value() / p) / std::pow(p, 1.0 / q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Poisson tail lower bound:
//   Pr(X > t) >= mu^t min{mu,1} e^{-mu} / ((t+1) t t^t),  t > 1,
// evaluated in log space.
// ---------------------------------------------------------------------------
inline double poisson_tail_lower_bound_log(double mu, double t) {
    if (!(mu > 0.0) || !(t > 1.0))
        throw std::invalid_argument("poisson_tail_lower_bound: need mu > 0, t > 1");
    return t * std::log(mu) + std::log(std::min(mu, 1.0)) - mu - std::log(t + 1.0) -
           std::log(t) - t * std::log(t);
}

inline double poisson_tail_lower_bound(double mu, double t) {
    return std::exp(poisson_tail_lower_bound_log(mu, t));
}

// ---------------------------------------------------------------------------
// Classification and preservation.
// ---------------------------------------------------------------------------

namespace detail {

// Endpoint catalog: at lambda = R_q every broad catalog family pairs a pure
// exponential at criticality with a polynomial (or constant) prefactor, so
// the endpoint moment diverges.
inline std::optional<bool> boundary_attained_catalog(SubweibullReport::Verdict v) {
    if (v == SubweibullReport::Verdict::Broad) return false;
    return std::nullopt;
}

}  // namespace detail

inline SubweibullReport classify(const Distribution& d, double q,
                                 const ToleranceConfig& tol = default_tolerances()) {
    SubweibullReport rep;
    rep.q = q;
    rep.r_q = estimate_radius(d, q, tol);
    if (rep.r_q == 0.0) {
        rep.verdict = SubweibullReport::Verdict::NotSubweibull;
        return rep;
    }
    rep.verdict = std::isinf(rep.r_q) ? SubweibullReport::Verdict::Strict
                                      : SubweibullReport::Verdict::Broad;
    rep.boundary_attained = detail::boundary_attained_catalog(rep.verdict);
    const double t_max = tol.t_max_scale * d.scale_hint();
    rep.k1 = smallest_tail_constant(d, q, t_max, tol);
    rep.k2 = moment_growth_constant(d, q, tol.p_max, tol);
    rep.k3 = smallest_orlicz_constant(d, q, tol);
    return rep;
}

// Preservation of the radius under exponential tilting: R_q of the base
// against R_q of the tilted law (conjugate when available, the weighted
// numeric moment otherwise). Propagates TiltOutsideInterval when theta is
// illegal for the base.
inline PreservationReport radius_preservation_report(
    const Distribution& d, double theta, double q,
    const ToleranceConfig& tol = default_tolerances()) {
    if (!(q > 1.0))
        throw std::invalid_argument("radius_preservation_report: requires q > 1");
    PreservationReport rep;
    rep.q = q;
    rep.theta = theta;
    rep.r_base = estimate_radius(d, q, tol);
    const TiltedDistribution td = tilt(d, theta, tol);
    rep.r_tilted = estimate_radius_tilted(td, q, tol);
    const bool base_inf = std::isinf(rep.r_base);
    const bool tilt_inf = std::isinf(rep.r_tilted);
    if (base_inf && tilt_inf)
        rep.relative_gap = 0.0;
    else if (base_inf != tilt_inf)
        rep.relative_gap = kPosInf;
    else
        rep.relative_gap = std::abs(rep.r_tilted - rep.r_base) / std::max(rep.r_base, 1e-9);
    return rep;
}

}  // namespace subweibull

#endif  // SUBWEIBULL_SUBWEIBULL_HPP
