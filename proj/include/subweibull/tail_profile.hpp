#ifndef SUBWEIBULL_TAIL_PROFILE_HPP
#define SUBWEIBULL_TAIL_PROFILE_HPP

#include <cmath>

#include "subweibull/math_util.hpp"

namespace subweibull {

// Asymptotic decay order of one tail of a density/mass function, used to
// settle finiteness questions that truncated quadrature cannot see: a window
// cap at x = 2^40 misses integrand bumps that live beyond it (small-lambda
// probes of exp(lambda^q |x|^q) against a Gaussian tail put the bump at
// x ~ lambda^{-q/(q-2)}).  For every catalog family -log density is
// eventually monotone with a known leading term, so the comparison
// "does lambda^q x^q outgrow -log density(x)?" has an exact answer.
struct TailProfile {
    enum class Kind {
        Bounded,       // no mass beyond a finite point
        StretchedExp,  // -log density ~ coeff * x^order, order > 0
        Factorial,     // -log mass ~ x log x   (Poisson-type)
        PowerLaw,      // density ~ x^{-(order+1)}; moments finite below `order`
        LogSquared     // -log density ~ (log x)^2 / (2 order^2)  (lognormal-type)
    };

    Kind kind = Kind::Bounded;
    double order = 0.0;  // StretchedExp: exponent r; PowerLaw: alpha; LogSquared: sigma
    double coeff = 0.0;  // StretchedExp: c in c*x^r

    static TailProfile bounded() { return {Kind::Bounded, 0.0, 0.0}; }
    static TailProfile stretched_exp(double order, double coeff) {
        return {Kind::StretchedExp, order, coeff};
    }
    static TailProfile factorial() { return {Kind::Factorial, 0.0, 0.0}; }
    static TailProfile power_law(double alpha) { return {Kind::PowerLaw, alpha, 0.0}; }
    static TailProfile log_squared(double sigma) { return {Kind::LogSquared, sigma, 0.0}; }
};

// Does the integral of exp(lambda^q x^q) against this tail diverge?
// At the exact boundary lambda^q == coeff the catalog densities carry only
// polynomial prefactors, so equality diverges.
inline bool exp_power_diverges(const TailProfile& p, double lambda, double q) {
    const double a = std::pow(lambda, q);
    switch (p.kind) {
        case TailProfile::Kind::Bounded:
            return false;
        case TailProfile::Kind::StretchedExp:
            if (q < p.order) return false;
            if (q > p.order) return true;
            return a >= p.coeff;
        case TailProfile::Kind::Factorial:
            return q > 1.0;  // x log x beats any c*x but loses to x^q, q>1
        case TailProfile::Kind::PowerLaw:
        case TailProfile::Kind::LogSquared:
            return true;  // any stretched exponential beats these tails
    }
    return true;
}

// Does the integral of exp(u*x), u > 0, against this tail diverge?
inline bool exp_linear_diverges(const TailProfile& p, double u) {
    switch (p.kind) {
        case TailProfile::Kind::Bounded:
            return false;
        case TailProfile::Kind::StretchedExp:
            if (p.order > 1.0) return false;
            if (p.order < 1.0) return true;
            return u >= p.coeff;
        case TailProfile::Kind::Factorial:
            return false;
        case TailProfile::Kind::PowerLaw:
        case TailProfile::Kind::LogSquared:
            return true;
    }
    return true;
}

// Does E[x^power] against this tail diverge?
inline bool moment_diverges(const TailProfile& p, double power) {
    if (p.kind == TailProfile::Kind::PowerLaw) return power >= p.order;
    return false;
}

// Tail profile after multiplying the density by exp(theta*x).  `theta_out`
// is the coefficient as seen looking outward along this tail (positive means
// the factor grows toward the tail).  Legal tilts keep theta_out below the
// coefficient of an exponential-order tail, which is exactly the convergence
// interval condition.
inline TailProfile tilt_tail(const TailProfile& p, double theta_out) {
    switch (p.kind) {
        case TailProfile::Kind::Bounded:
            return p;
        case TailProfile::Kind::StretchedExp:
            if (p.order > 1.0) return p;  // x^r, r>1 dominates any linear term
            if (p.order == 1.0) return TailProfile::stretched_exp(1.0, p.coeff - theta_out);
            // r < 1: a negative linear term takes over the decay
            return theta_out < 0.0 ? TailProfile::stretched_exp(1.0, -theta_out) : p;
        case TailProfile::Kind::Factorial:
            return p;  // x log x absorbs any linear shift
        case TailProfile::Kind::PowerLaw:
        case TailProfile::Kind::LogSquared:
            // only theta_out < 0 is reachable (these tails are heavy)
            return theta_out < 0.0 ? TailProfile::stretched_exp(1.0, -theta_out) : p;
    }
    return p;
}

}  // namespace subweibull

#endif  // SUBWEIBULL_TAIL_PROFILE_HPP
