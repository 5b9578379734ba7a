// Independent reference computations for the test suites. Everything here is
// derived from textbook closed forms or brute-force summation, deliberately
// sharing no code with the library paths it checks.
#ifndef SWB_TEST_ORACLES_HPP
#define SWB_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// --- closed-form Laplace transforms L(t) = E[exp(-tX)]; NaN marks divergence.
inline double gaussian_laplace(double mu, double sigma, double t) {
    return std::exp(-t * mu + 0.5 * t * t * sigma * sigma);
}
inline double exponential_laplace(double rate, double t) {
    if (t <= -rate) return std::nan("");
    return rate / (rate + t);
}
inline double laplace_laplace(double loc, double scale, double t) {
    if (std::abs(t) * scale >= 1.0) return std::nan("");
    return std::exp(-t * loc) / (1.0 - scale * scale * t * t);
}
inline double poisson_laplace(double mu, double t) { return std::exp(mu * (std::exp(-t) - 1.0)); }
inline double uniform_laplace(double a, double b, double t) {
    if (t == 0.0) return 1.0;
    return (std::exp(-t * a) - std::exp(-t * b)) / (t * (b - a));
}

// --- moments
// E|Z|^p for Z ~ N(0,1):  2^{p/2} Gamma((p+1)/2) / sqrt(pi)
inline double normal_abs_moment_log(double p) {
    return 0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(kPi);
}
// E X^p = p! for X ~ Exponential(1)
inline double exponential_moment_log(double p) { return std::lgamma(p + 1.0); }

// --- Poisson tail by direct partial summation, remainder below 1e-30.
inline double poisson_pmf(double mu, std::int64_t k) {
    return std::exp(k * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0));
}
inline double poisson_survival(double mu, double t) {
    if (t < 0.0) return 1.0;
    const std::int64_t first = static_cast<std::int64_t>(std::floor(t)) + 1;
    double sum = 0.0;
    for (std::int64_t k = first; k < first + 4000; ++k) {
        const double term = poisson_pmf(mu, k);
        sum += term;
        if (term < 1e-30 && k > first + 4) break;
    }
    return sum;
}
inline double poisson_log_survival(double mu, double t) {
    // log-space version for deep tails
    const std::int64_t first = static_cast<std::int64_t>(std::floor(t)) + 1;
    double log_sum = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = first; k < first + 4000; ++k) {
        const double lt = k * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0);
        const double hi = std::max(log_sum, lt), lo = std::min(log_sum, lt);
        log_sum = hi + std::log1p(std::exp(lo - hi));
        if (lt < log_sum - 80.0 && k > first + 4) break;
    }
    return log_sum;
}

// --- goodness of fit
// One-sample Kolmogorov-Smirnov statistic against a cdf.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}
// 1% critical value for the one-sample KS statistic (asymptotic).
inline double ks_critical_1pct(std::size_t n) { return 1.62762 / std::sqrt(static_cast<double>(n)); }

// Pearson chi-square over integer bins [0, cutoff] plus an overflow bin.
inline double chi_square_integer(const std::vector<double>& sample, int cutoff,
                                 const std::function<double(int)>& pmf) {
    std::vector<double> observed(cutoff + 2, 0.0);
    for (double x : sample) {
        const int k = static_cast<int>(x);
        observed[std::min(k, cutoff + 1)] += 1.0;
    }
    const double n = static_cast<double>(sample.size());
    double stat = 0.0;
    double tail_p = 1.0;
    for (int k = 0; k <= cutoff; ++k) {
        const double p = pmf(k);
        tail_p -= p;
        const double e = n * p;
        stat += (observed[k] - e) * (observed[k] - e) / e;
    }
    const double e_tail = n * tail_p;
    stat += (observed[cutoff + 1] - e_tail) * (observed[cutoff + 1] - e_tail) / e_tail;
    return stat;
}

}  // namespace oracles

#endif  // SWB_TEST_ORACLES_HPP
