#ifndef SUBWEIBULL_QUADRATURE_HPP
#define SUBWEIBULL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "subweibull/math_util.hpp"

namespace subweibull {

// Adaptive Gauss-Kronrod 7-15 quadrature of a nonnegative integrand given by
// its log. All accumulation happens in log space: node contributions combine
// by log-sum-exp, interval results by pairwise reduction, so integrals whose
// value overflows double (log up to ~1e15) still come back with a meaningful
// log. The error estimate |1 - G7/K15| acts as a relative error; intervals
// whose entire contribution is negligible against the running total are
// accepted as-is.

namespace detail {

// QUADPACK 15-point Kronrod nodes / weights and the embedded 7-point Gauss
// weights (nodes at odd Kronrod indices).
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kGaussWeights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct PanelResult {
    double log_value;  // log of the K15 estimate
    double rel_err;    // |1 - exp(logG - logK)|
    double x_max;      // node with the largest integrand value
};

inline PanelResult gk15_log(const std::function<double(double)>& log_f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    std::vector<double> kron;
    std::vector<double> gauss;
    kron.reserve(15);
    gauss.reserve(7);
    const double log_h = std::log(h);
    double best = kNegInf, x_max = c;
    for (int i = 0; i < 15; ++i) {
        const double x = c + h * kKronrodNodes[i];
        const double g = log_f(x);
        if (g > best) {
            best = g;
            x_max = x;
        }
        kron.push_back(std::log(kKronrodWeights[i]) + log_h + g);
        if (i % 2 == 1) gauss.push_back(std::log(kGaussWeights[i / 2]) + log_h + g);
    }
    const double log_k = log_sum_exp(kron);
    const double log_g = log_sum_exp(gauss);
    double err;
    if (log_k == kNegInf)
        err = (log_g == kNegInf) ? 0.0 : 1.0;
    else
        err = std::abs(-std::expm1(log_g - log_k));
    return {log_k, err, x_max};
}

}  // namespace detail

// log of the integral of exp(log_f) over [a, b]. Interior points from
// `breakpoints` (kinks, support edges) become panel boundaries up front; a
// kink hiding between the outermost Kronrod node and a panel edge would
// otherwise look smooth to the error estimate.
inline double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                            double rel_tol = 1e-12,
                            const std::vector<double>& breakpoints = {}, int max_depth = 55) {
    if (!(a < b)) return kNegInf;
    struct Panel {
        double a, b;
        int depth;
        double parent_err;
    };
    std::vector<Panel> todo;
    {
        std::vector<double> edges{a};
        for (double p : breakpoints)
            if (p > a && p < b) edges.push_back(p);
        edges.push_back(b);
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i] < edges[i + 1]) todo.push_back({edges[i], edges[i + 1], 0, kPosInf});
    }
    std::vector<double> accepted;
    double running = kNegInf;  // log of the sum of accepted panels
    while (!todo.empty()) {
        const Panel p = todo.back();
        todo.pop_back();
        const auto r = detail::gk15_log(log_f, p.a, p.b);
        const bool negligible = r.log_value < running - 46.0;  // < 1e-20 of total
        // The G/K comparison happens on log values, so its resolution is a
        // few ulps of |log|; below that floor the estimate is pure noise.
        const double tol_here = std::max(rel_tol, std::abs(r.log_value) * 2e-14);
        // A panel whose absolute error estimate err*value is already far
        // below the accumulated total cannot matter; without this rule,
        // integrands with internal cancellation (theta*x against -x^2 at
        // x ~ 1e3) pin the error estimate at the cancellation noise and
        // subdivision never terminates on its own.
        const bool error_negligible =
            running > kNegInf && r.rel_err > 0.0 &&
            r.log_value + std::log(r.rel_err) < running - 35.0;
        // A small error estimate that stops shrinking under subdivision has
        // hit the integrand's own evaluation-noise floor (e.g. a*x^2 against
        // -x^2/2 cancels catastrophically near a far-out peak); refining
        // further only multiplies panels. Smooth integrands gain orders of
        // magnitude per halving, so stagnation is a reliable noise signal.
        // The ceiling keeps integrable-singularity corners (large, scale-
        // invariant error) refining toward the depth cap instead.
        const bool stagnant =
            p.depth >= 25 && r.rel_err < 1e-4 && r.rel_err > 0.25 * p.parent_err;
        if (r.rel_err <= tol_here || p.depth >= max_depth || negligible || error_negligible ||
            stagnant) {
            accepted.push_back(r.log_value);
            running = log_add(running, r.log_value);
        } else {
            // Descend toward the integrand's peak first (stack is LIFO), so
            // the running total rises immediately and far-from-peak siblings
            // are accepted as negligible instead of being refined.
            const double mid = 0.5 * (p.a + p.b);
            if (r.x_max < mid) {
                todo.push_back({mid, p.b, p.depth + 1, r.rel_err});
                todo.push_back({p.a, mid, p.depth + 1, r.rel_err});
            } else {
                todo.push_back({p.a, mid, p.depth + 1, r.rel_err});
                todo.push_back({mid, p.b, p.depth + 1, r.rel_err});
            }
        }
    }
    return log_sum_exp(accepted);
}

}  // namespace subweibull

#endif  // SUBWEIBULL_QUADRATURE_HPP
