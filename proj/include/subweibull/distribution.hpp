#ifndef SUBWEIBULL_DISTRIBUTION_HPP
#define SUBWEIBULL_DISTRIBUTION_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "subweibull/errors.hpp"
#include "subweibull/math_util.hpp"
#include "subweibull/tail_profile.hpp"

namespace subweibull {

class Distribution;
using DistributionPtr = std::shared_ptr<const Distribution>;

// ---------------------------------------------------------------------------
// Family parameter structs. All scale/rate/shape parameters must be strictly
// positive; construction validates.
// ---------------------------------------------------------------------------

struct Gaussian {
    double mu, sigma;
};
struct Exponential {
    double rate;
};
struct Laplace {
    double location, scale;
};
struct Weibull {
    double shape, scale;
};
struct HalfNormal {
    double sigma;
};
struct Poisson {
    double mu;
};
struct Uniform {
    double a, b;
};
struct Pareto {
    double x_min, alpha;
};
struct LogNormal {
    double mu, sigma;
};
struct PointMass {
    double c;
};
// X = -L with probability p (L ~ left, supported on (0,inf)),
// X = R with probability 1-p (R ~ right, supported on [0,inf)).
struct TwoSidedMixture {
    DistributionPtr left, right;
    double p;
};

struct Support {
    enum class Kind { Continuous, Integers, Point } kind;
    double lower, upper;
};

struct SplitResult;  // below

// ---------------------------------------------------------------------------
// Distribution: an immutable univariate law from the fixed catalog. All
// operations are pure functions of (parameters, arguments); sampling is a
// pure function of (law, n, seed).
// ---------------------------------------------------------------------------
class Distribution {
public:
    using Family = std::variant<Gaussian, Exponential, Laplace, Weibull, HalfNormal, Poisson,
                                Uniform, Pareto, LogNormal, PointMass, TwoSidedMixture>;

    explicit Distribution(Family family) : family_(std::move(family)) { validate(); }

    const Family& family() const { return family_; }
    Support support() const;
    bool is_discrete() const;
    std::string family_name() const;

    // Density for continuous laws, mass at integer points for discrete ones;
    // zero off support.
    double density(double x) const;
    double log_density(double x) const;

    double cdf(double x) const;
    double survival(double x) const { return 1.0 - cdf(x); }

    // Pr(|X| > t) and its log, stable far into the tails.
    double abs_survival(double t) const;
    double log_abs_survival(double t) const;

    // Inverse CDF; for integer-supported laws the smallest k with cdf(k) >= p.
    double quantile(double p) const;

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

    // Lemma-style negative/nonnegative decomposition; see SplitResult.
    SplitResult split() const;

    double mean() const;
    double variance() const;
    // Positive length scale for default diagnostic horizons: the standard
    // deviation when finite, a representative scale parameter otherwise.
    double scale_hint() const;

    TailProfile right_tail() const;
    TailProfile left_tail() const;

    // Points where the density is not smooth (kinks, support edges); panel
    // boundaries for quadrature.
    std::vector<double> non_smooth_points() const;

private:
    void validate() const;
    Family family_;
};

inline Distribution make_gaussian(double mu, double sigma) { return Distribution(Gaussian{mu, sigma}); }
inline Distribution make_exponential(double rate) { return Distribution(Exponential{rate}); }
inline Distribution make_laplace(double location, double scale) {
    return Distribution(Laplace{location, scale});
}
inline Distribution make_weibull(double shape, double scale) {
    return Distribution(Weibull{shape, scale});
}
inline Distribution make_half_normal(double sigma) { return Distribution(HalfNormal{sigma}); }
inline Distribution make_poisson(double mu) { return Distribution(Poisson{mu}); }
inline Distribution make_uniform(double a, double b) { return Distribution(Uniform{a, b}); }
inline Distribution make_pareto(double x_min, double alpha) {
    return Distribution(Pareto{x_min, alpha});
}
inline Distribution make_log_normal(double mu, double sigma) {
    return Distribution(LogNormal{mu, sigma});
}
inline Distribution make_point_mass(double c) { return Distribution(PointMass{c}); }
inline Distribution make_two_sided_mixture(Distribution left, Distribution right, double p) {
    return Distribution(TwoSidedMixture{std::make_shared<const Distribution>(std::move(left)),
                                        std::make_shared<const Distribution>(std::move(right)), p});
}

// Decomposition of a two-sided law X into nonnegative halves:
// A is the law of -X given X < 0, B the law of X given X >= 0 (an atom at 0
// belongs to B), p = Pr(X < 0). Reconstruction:
//   cdf(x) = p * survival_A(-x)            for x < 0
//   cdf(x) = p + (1-p) * cdf_B(x)          for x >= 0
struct SplitResult {
    Distribution negative_part;  // A
    Distribution nonnegative_part;  // B
    double p;
};

// ---------------------------------------------------------------------------
// Poisson helpers shared by cdf/survival/diagnostics. Tail sums are done in
// log space so that survival probabilities like Pr(X > 700) stay meaningful.
// ---------------------------------------------------------------------------

inline double poisson_log_pmf(double mu, std::int64_t k) {
    if (k < 0) return kNegInf;
    return static_cast<double>(k) * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0);
}

// log Pr(X > t) via summation from floor(t)+1; the remainder after the last
// term is bounded by a geometric series and folded in once the ratio is
// safely below one.
inline double poisson_log_survival(double mu, double t) {
    if (t < 0.0) return 0.0;  // log 1
    const std::int64_t first = static_cast<std::int64_t>(std::floor(t)) + 1;
    std::vector<double> terms;
    double prev = kNegInf;
    double running = kNegInf;
    for (std::int64_t k = first;; ++k) {
        const double lp = poisson_log_pmf(mu, k);
        terms.push_back(lp);
        running = log_add(running, lp);
        const double ratio = lp - prev;  // log pmf(k)/pmf(k-1) = log mu - log k
        prev = lp;
        if (k > first && ratio < -0.5) {
            // remaining tail < pmf(k) * e^ratio / (1 - e^ratio); stop once the
            // bound itself no longer moves the sum
            const double rem = lp + ratio - std::log1p(-std::exp(ratio));
            if (rem < running - 34.5) {  // < 1e-15 of the total
                terms.push_back(rem);
                break;
            }
        }
        if (terms.size() > 400000) break;  // unreachable for catalog inputs
    }
    return log_sum_exp(terms);
}

inline double poisson_cdf(double mu, double x) {
    if (x < 0.0) return 0.0;
    const std::int64_t last = static_cast<std::int64_t>(std::floor(x));
    // Sum from the small side when that is cheaper and better conditioned.
    if (static_cast<double>(last) < mu + 20.0 * std::sqrt(mu) + 20.0) {
        double sum = 0.0;
        double term = std::exp(-mu);
        for (std::int64_t k = 0; k <= last; ++k) {
            sum += term;
            term *= mu / static_cast<double>(k + 1);
        }
        return std::min(sum, 1.0);
    }
    return 1.0 - std::exp(poisson_log_survival(mu, x));
}

// ---------------------------------------------------------------------------
// Implementation
// ---------------------------------------------------------------------------

inline void Distribution::validate() const {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    };
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                require(f.sigma > 0.0, "gaussian.sigma must be > 0");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                require(f.rate > 0.0, "exponential.rate must be > 0");
            } else if constexpr (std::is_same_v<T, Laplace>) {
                require(f.scale > 0.0, "laplace.scale must be > 0");
            } else if constexpr (std::is_same_v<T, Weibull>) {
                require(f.shape > 0.0, "weibull.shape must be > 0");
                require(f.scale > 0.0, "weibull.scale must be > 0");
            } else if constexpr (std::is_same_v<T, HalfNormal>) {
                require(f.sigma > 0.0, "half_normal.sigma must be > 0");
            } else if constexpr (std::is_same_v<T, Poisson>) {
                require(f.mu > 0.0, "poisson.mu must be > 0");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                require(f.a < f.b, "uniform requires a < b");
            } else if constexpr (std::is_same_v<T, Pareto>) {
                require(f.x_min > 0.0, "pareto.x_min must be > 0");
                require(f.alpha > 0.0, "pareto.alpha must be > 0");
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                require(f.sigma > 0.0, "log_normal.sigma must be > 0");
            } else if constexpr (std::is_same_v<T, PointMass>) {
                // any real c
            } else if constexpr (std::is_same_v<T, TwoSidedMixture>) {
                require(f.left && f.right, "mixture components must be present");
                require(f.p > 0.0 && f.p < 1.0, "mixture.p must lie in (0,1)");
                require(!f.left->is_discrete() && !f.right->is_discrete(),
                        "mixture components must be continuous");
                require(f.left->support().lower >= 0.0 && f.right->support().lower >= 0.0,
                        "mixture components must be supported on [0,inf)");
            }
        },
        family_);
}

inline Support Distribution::support() const {
    return std::visit(
        [](const auto& f) -> Support {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                return {Support::Kind::Continuous, kNegInf, kPosInf};
            else if constexpr (std::is_same_v<T, Exponential>)
                return {Support::Kind::Continuous, 0.0, kPosInf};
            else if constexpr (std::is_same_v<T, Laplace>)
                return {Support::Kind::Continuous, kNegInf, kPosInf};
            else if constexpr (std::is_same_v<T, Weibull>)
                return {Support::Kind::Continuous, 0.0, kPosInf};
            else if constexpr (std::is_same_v<T, HalfNormal>)
                return {Support::Kind::Continuous, 0.0, kPosInf};
            else if constexpr (std::is_same_v<T, Poisson>)
                return {Support::Kind::Integers, 0.0, kPosInf};
            else if constexpr (std::is_same_v<T, Uniform>)
                return {Support::Kind::Continuous, f.a, f.b};
            else if constexpr (std::is_same_v<T, Pareto>)
                return {Support::Kind::Continuous, f.x_min, kPosInf};
            else if constexpr (std::is_same_v<T, LogNormal>)
                return {Support::Kind::Continuous, 0.0, kPosInf};
            else if constexpr (std::is_same_v<T, PointMass>)
                return {Support::Kind::Point, f.c, f.c};
            else {  // TwoSidedMixture
                const TwoSidedMixture& m = f;
                return {Support::Kind::Continuous, -m.left->support().upper,
                        m.right->support().upper};
            }
        },
        family_);
}

inline bool Distribution::is_discrete() const {
    return std::holds_alternative<Poisson>(family_) || std::holds_alternative<PointMass>(family_);
}

inline std::string Distribution::family_name() const {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) return "gaussian";
            else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
            else if constexpr (std::is_same_v<T, Laplace>) return "laplace";
            else if constexpr (std::is_same_v<T, Weibull>) return "weibull";
            else if constexpr (std::is_same_v<T, HalfNormal>) return "half_normal";
            else if constexpr (std::is_same_v<T, Poisson>) return "poisson";
            else if constexpr (std::is_same_v<T, Uniform>) return "uniform";
            else if constexpr (std::is_same_v<T, Pareto>) return "pareto";
            else if constexpr (std::is_same_v<T, LogNormal>) return "log_normal";
            else if constexpr (std::is_same_v<T, PointMass>) return "point_mass";
            else return "two_sided_mixture";
        },
        family_);
}

inline double Distribution::log_density(double x) const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double z = (x - f.mu) / f.sigma;
                return normal_log_pdf(z) - std::log(f.sigma);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                if (x < 0.0) return kNegInf;
                return std::log(f.rate) - f.rate * x;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return -std::abs(x - f.location) / f.scale - std::log(2.0 * f.scale);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                if (x < 0.0) return kNegInf;
                if (x == 0.0) return f.shape > 1.0 ? kNegInf : (f.shape == 1.0 ? std::log(1.0 / f.scale) : kPosInf);
                const double z = x / f.scale;
                return std::log(f.shape / f.scale) + (f.shape - 1.0) * std::log(z) -
                       std::pow(z, f.shape);
            } else if constexpr (std::is_same_v<T, HalfNormal>) {
                if (x < 0.0) return kNegInf;
                // density = (2/sigma) * phi(x/sigma) on [0, inf)
                return kLogTwo + normal_log_pdf(x / f.sigma) - std::log(f.sigma);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                if (x < 0.0 || std::abs(x - std::round(x)) > 1e-9) return kNegInf;
                return poisson_log_pmf(f.mu, static_cast<std::int64_t>(std::llround(x)));
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x < f.a || x > f.b) return kNegInf;
                return -std::log(f.b - f.a);
            } else if constexpr (std::is_same_v<T, Pareto>) {
                if (x < f.x_min) return kNegInf;
                return std::log(f.alpha) + f.alpha * std::log(f.x_min) -
                       (f.alpha + 1.0) * std::log(x);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                if (x <= 0.0) return kNegInf;
                const double z = (std::log(x) - f.mu) / f.sigma;
                return normal_log_pdf(z) - std::log(x * f.sigma);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return x == f.c ? 0.0 : kNegInf;
            } else {
                const TwoSidedMixture& m = f;
                if (x < 0.0) return std::log(m.p) + m.left->log_density(-x);
                return std::log1p(-m.p) + m.right->log_density(x);
            }
        },
        family_);
}

inline double Distribution::density(double x) const {
    const double ld = log_density(x);
    return std::exp(ld);
}

inline double Distribution::cdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return normal_cdf((x - f.mu) / f.sigma);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return x < 0.0 ? 0.0 : -std::expm1(-f.rate * x);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                const double z = (x - f.location) / f.scale;
                return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return x < 0.0 ? 0.0 : -std::expm1(-std::pow(x / f.scale, f.shape));
            } else if constexpr (std::is_same_v<T, HalfNormal>) {
                return x < 0.0 ? 0.0 : std::erf(x / (f.sigma * std::sqrt(2.0)));
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return poisson_cdf(f.mu, x);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= f.a) return 0.0;
                if (x >= f.b) return 1.0;
                return (x - f.a) / (f.b - f.a);
            } else if constexpr (std::is_same_v<T, Pareto>) {
                return x <= f.x_min ? 0.0 : 1.0 - std::pow(f.x_min / x, f.alpha);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - f.mu) / f.sigma);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return x >= f.c ? 1.0 : 0.0;
            } else {
                const TwoSidedMixture& m = f;
                if (x < 0.0) return m.p * m.left->survival(-x);
                return m.p + (1.0 - m.p) * m.right->cdf(x);
            }
        },
        family_);
}

// log Pr(X > t) for t in the right tail; family-specific forms keep this
// finite far past where survival() underflows.
inline double dist_log_right_survival(const Distribution& d, double t) {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return normal_log_sf((t - f.mu) / f.sigma);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return t < 0.0 ? 0.0 : -f.rate * t;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                const double z = (t - f.location) / f.scale;
                return z < 0.0 ? std::log1p(-0.5 * std::exp(z)) : -z - kLogTwo;
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return t < 0.0 ? 0.0 : -std::pow(t / f.scale, f.shape);
            } else if constexpr (std::is_same_v<T, HalfNormal>) {
                if (t < 0.0) return 0.0;
                return kLogTwo + normal_log_sf(t / f.sigma);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return poisson_log_survival(f.mu, t);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (t <= f.a) return 0.0;
                if (t >= f.b) return kNegInf;
                return std::log((f.b - t) / (f.b - f.a));
            } else if constexpr (std::is_same_v<T, Pareto>) {
                return t <= f.x_min ? 0.0 : -f.alpha * std::log(t / f.x_min);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return t <= 0.0 ? 0.0 : normal_log_sf((std::log(t) - f.mu) / f.sigma);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return t < f.c ? 0.0 : kNegInf;
            } else {
                const TwoSidedMixture& m = f;
                if (t < 0.0) {
                    return log_add(std::log(m.p) + std::log(m.left->cdf(-t)),
                                   std::log1p(-m.p));
                }
                return std::log1p(-m.p) + dist_log_right_survival(*m.right, t);
            }
        },
        d.family());
}

inline double Distribution::log_abs_survival(double t) const {
    if (t < 0.0) t = 0.0;
    const Support s = support();
    // Right tail: Pr(X > t); left tail: Pr(X < -t).
    const double right = dist_log_right_survival(*this, t);
    double left = kNegInf;
    if (s.lower < 0.0) {
        if (const auto* g = std::get_if<Gaussian>(&family_)) {
            left = normal_log_sf((t + g->mu) / g->sigma);
        } else if (const auto* l = std::get_if<Laplace>(&family_)) {
            const double z = (-t - l->location) / l->scale;
            left = z < 0.0 ? z - kLogTwo : std::log1p(-0.5 * std::exp(-z));
        } else if (const auto* u = std::get_if<Uniform>(&family_)) {
            if (-t <= u->a) left = kNegInf;
            else if (-t >= u->b) left = 0.0;
            else left = std::log((-t - u->a) / (u->b - u->a));
        } else if (const auto* pm = std::get_if<PointMass>(&family_)) {
            left = (-t > pm->c) ? 0.0 : kNegInf;
        } else if (const auto* m = std::get_if<TwoSidedMixture>(&family_)) {
            left = std::log(m->p) + dist_log_right_survival(*m->left, t);
        }
    } else if (const auto* pm = std::get_if<PointMass>(&family_)) {
        left = (-t > pm->c) ? 0.0 : kNegInf;
    }
    // Pr(|X| > t) = Pr(X > t) + Pr(X < -t); strict inequality on both sides
    // matches Pr(|X| > t) exactly for continuous laws and for t >= 0 in the
    // discrete catalog (mass sits on nonnegative integers).
    return log_add(right, left);
}

inline double Distribution::abs_survival(double t) const {
    return std::min(1.0, std::exp(log_abs_survival(t)));
}

inline double Distribution::quantile(double p) const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0,1]");
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return f.mu + f.sigma * normal_quantile(p);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-p) / f.rate;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                if (p < 0.5) return f.location + f.scale * std::log(2.0 * p);
                return f.location - f.scale * std::log(2.0 * (1.0 - p));
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return f.scale * std::pow(-std::log1p(-p), 1.0 / f.shape);
            } else if constexpr (std::is_same_v<T, HalfNormal>) {
                return f.sigma * normal_quantile(0.5 * (1.0 + p));
            } else if constexpr (std::is_same_v<T, Poisson>) {
                // Inversion over cumulative sums, extended on demand.
                if (p >= 1.0) return kPosInf;
                double cum = 0.0;
                double term = std::exp(-f.mu);
                std::int64_t k = 0;
                while (cum + term < p && k < (1 << 30)) {
                    cum += term;
                    term *= f.mu / static_cast<double>(k + 1);
                    ++k;
                }
                return static_cast<double>(k);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return f.a + p * (f.b - f.a);
            } else if constexpr (std::is_same_v<T, Pareto>) {
                if (p >= 1.0) return kPosInf;
                return f.x_min * std::pow(1.0 - p, -1.0 / f.alpha);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return std::exp(f.mu + f.sigma * normal_quantile(p));
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return f.c;
            } else {
                const TwoSidedMixture& m = f;
                if (p < m.p) return -m.left->quantile(1.0 - p / m.p);
                if (p == m.p) return 0.0;
                return m.right->quantile((p - m.p) / (1.0 - m.p));
            }
        },
        family_);
}

inline std::vector<double> Distribution::sample(std::size_t n, std::uint64_t seed) const {
    UniformStream u(seed);
    std::vector<double> out;
    out.reserve(n);
    if (const auto* po = std::get_if<Poisson>(&family_)) {
        // Cumulative table built once per call and extended on demand.
        std::vector<double> cum;
        double term = std::exp(-po->mu);
        double acc = term;
        cum.push_back(acc);
        auto extend = [&](double target) {
            while (acc < target && cum.size() < (1u << 24)) {
                term *= po->mu / static_cast<double>(cum.size());
                acc += term;
                cum.push_back(acc);
            }
        };
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u.next();
            extend(v);
            const auto it = std::lower_bound(cum.begin(), cum.end(), v);
            out.push_back(static_cast<double>(it - cum.begin()));
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(u.next()));
    return out;
}

inline SplitResult Distribution::split() const {
    // Pr(X < 0): for continuous laws this is cdf(0); an atom at zero belongs
    // to the nonnegative half.
    const double p = is_discrete() ? cdf(0.0) - density(0.0) : cdf(0.0);
    if (p <= 0.0 || p >= 1.0)
        throw DegenerateSplit("split: Pr(X<0) is " + std::to_string(p) +
                              "; use the law or its negation directly");
    if (const auto* m = std::get_if<TwoSidedMixture>(&family_)) {
        return SplitResult{*m->left, *m->right, m->p};
    }
    if (const auto* g = std::get_if<Gaussian>(&family_)) {
        if (g->mu == 0.0)
            return SplitResult{make_half_normal(g->sigma), make_half_normal(g->sigma), 0.5};
    }
    if (const auto* l = std::get_if<Laplace>(&family_)) {
        if (l->location == 0.0)
            return SplitResult{make_exponential(1.0 / l->scale), make_exponential(1.0 / l->scale),
                               0.5};
    }
    if (const auto* uf = std::get_if<Uniform>(&family_)) {
        if (uf->a < 0.0 && uf->b > 0.0)
            return SplitResult{make_uniform(0.0, -uf->a), make_uniform(0.0, uf->b),
                               -uf->a / (uf->b - uf->a)};
    }
    throw SplitNotRepresentable("split: conditioned halves of " + family_name() +
                                " with these parameters are outside the catalog");
}

inline double Distribution::mean() const {
    return std::visit(
        [](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) return f.mu;
            else if constexpr (std::is_same_v<T, Exponential>) return 1.0 / f.rate;
            else if constexpr (std::is_same_v<T, Laplace>) return f.location;
            else if constexpr (std::is_same_v<T, Weibull>)
                return f.scale * std::tgamma(1.0 + 1.0 / f.shape);
            else if constexpr (std::is_same_v<T, HalfNormal>)
                return f.sigma * std::sqrt(2.0 / kPi);
            else if constexpr (std::is_same_v<T, Poisson>) return f.mu;
            else if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (f.a + f.b);
            else if constexpr (std::is_same_v<T, Pareto>)
                return f.alpha > 1.0 ? f.alpha * f.x_min / (f.alpha - 1.0) : kPosInf;
            else if constexpr (std::is_same_v<T, LogNormal>)
                return std::exp(f.mu + 0.5 * f.sigma * f.sigma);
            else if constexpr (std::is_same_v<T, PointMass>) return f.c;
            else {
                const TwoSidedMixture& m = f;
                return -m.p * m.left->mean() + (1.0 - m.p) * m.right->mean();
            }
        },
        family_);
}

inline double Distribution::variance() const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) return f.sigma * f.sigma;
            else if constexpr (std::is_same_v<T, Exponential>) return 1.0 / (f.rate * f.rate);
            else if constexpr (std::is_same_v<T, Laplace>) return 2.0 * f.scale * f.scale;
            else if constexpr (std::is_same_v<T, Weibull>) {
                const double g1 = std::tgamma(1.0 + 1.0 / f.shape);
                const double g2 = std::tgamma(1.0 + 2.0 / f.shape);
                return f.scale * f.scale * (g2 - g1 * g1);
            } else if constexpr (std::is_same_v<T, HalfNormal>)
                return f.sigma * f.sigma * (1.0 - 2.0 / kPi);
            else if constexpr (std::is_same_v<T, Poisson>) return f.mu;
            else if constexpr (std::is_same_v<T, Uniform>)
                return (f.b - f.a) * (f.b - f.a) / 12.0;
            else if constexpr (std::is_same_v<T, Pareto>) {
                if (f.alpha <= 2.0) return kPosInf;
                return f.x_min * f.x_min * f.alpha /
                       ((f.alpha - 1.0) * (f.alpha - 1.0) * (f.alpha - 2.0));
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                const double s2 = f.sigma * f.sigma;
                return std::expm1(s2) * std::exp(2.0 * f.mu + s2);
            } else if constexpr (std::is_same_v<T, PointMass>)
                return 0.0;
            else {
                const TwoSidedMixture& m = f;
                const double ml = m.left->mean(), mr = m.right->mean();
                const double vl = m.left->variance(), vr = m.right->variance();
                const double mean2 = m.p * (vl + ml * ml) + (1.0 - m.p) * (vr + mr * mr);
                const double mu1 = -m.p * ml + (1.0 - m.p) * mr;
                return mean2 - mu1 * mu1;
            }
        },
        family_);
}

inline double Distribution::scale_hint() const {
    const double v = variance();
    if (std::isfinite(v) && v > 0.0) return std::sqrt(v);
    if (const auto* pa = std::get_if<Pareto>(&family_)) return pa->x_min;
    if (const auto* pm = std::get_if<PointMass>(&family_)) return std::max(std::abs(pm->c), 1.0);
    return 1.0;
}

inline TailProfile Distribution::right_tail() const {
    return std::visit(
        [](const auto& f) -> TailProfile {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                return TailProfile::stretched_exp(2.0, 0.5 / (f.sigma * f.sigma));
            else if constexpr (std::is_same_v<T, Exponential>)
                return TailProfile::stretched_exp(1.0, f.rate);
            else if constexpr (std::is_same_v<T, Laplace>)
                return TailProfile::stretched_exp(1.0, 1.0 / f.scale);
            else if constexpr (std::is_same_v<T, Weibull>)
                return TailProfile::stretched_exp(f.shape, std::pow(f.scale, -f.shape));
            else if constexpr (std::is_same_v<T, HalfNormal>)
                return TailProfile::stretched_exp(2.0, 0.5 / (f.sigma * f.sigma));
            else if constexpr (std::is_same_v<T, Poisson>)
                return TailProfile::factorial();
            else if constexpr (std::is_same_v<T, Uniform>)
                return TailProfile::bounded();
            else if constexpr (std::is_same_v<T, Pareto>)
                return TailProfile::power_law(f.alpha);
            else if constexpr (std::is_same_v<T, LogNormal>)
                return TailProfile::log_squared(f.sigma);
            else if constexpr (std::is_same_v<T, PointMass>)
                return TailProfile::bounded();
            else
                return f.right->right_tail();
        },
        family_);
}

inline std::vector<double> Distribution::non_smooth_points() const {
    return std::visit(
        [](const auto& f) -> std::vector<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential> || std::is_same_v<T, Weibull> ||
                          std::is_same_v<T, HalfNormal> || std::is_same_v<T, LogNormal>)
                return {0.0};
            else if constexpr (std::is_same_v<T, Laplace>)
                return {f.location};
            else if constexpr (std::is_same_v<T, Uniform>)
                return {f.a, f.b};
            else if constexpr (std::is_same_v<T, Pareto>)
                return {f.x_min};
            else if constexpr (std::is_same_v<T, TwoSidedMixture>) {
                std::vector<double> pts{0.0};
                for (double p : f.left->non_smooth_points()) pts.push_back(-p);
                for (double p : f.right->non_smooth_points()) pts.push_back(p);
                return pts;
            } else
                return {};
        },
        family_);
}

inline TailProfile Distribution::left_tail() const {
    return std::visit(
        [](const auto& f) -> TailProfile {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                return TailProfile::stretched_exp(2.0, 0.5 / (f.sigma * f.sigma));
            else if constexpr (std::is_same_v<T, Laplace>)
                return TailProfile::stretched_exp(1.0, 1.0 / f.scale);
            else if constexpr (std::is_same_v<T, TwoSidedMixture>)
                return f.left->right_tail();
            else
                return TailProfile::bounded();  // all other families have support bounded below
        },
        family_);
}

}  // namespace subweibull

#endif  // SUBWEIBULL_DISTRIBUTION_HPP
