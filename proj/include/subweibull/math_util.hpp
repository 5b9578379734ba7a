#ifndef SUBWEIBULL_MATH_UTIL_HPP
#define SUBWEIBULL_MATH_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace subweibull {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogTwo = 0.6931471805599453094;
inline constexpr double kHalfLogTwoPi = 0.9189385332046727418;  // log(2*pi)/2

// log(exp(a) + exp(b)) without leaving log space.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// Pairwise log-sum-exp reduction over a scratch vector (consumes it).
inline double log_sum_exp(std::vector<double>& terms) {
    if (terms.empty()) return kNegInf;
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i)
            terms[i] = log_add(terms[i], terms[i + half]);
        n = half;
    }
    return terms[0];
}

// Standard normal density, log density.
inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
inline double normal_log_pdf(double z) { return -0.5 * z * z - kHalfLogTwoPi; }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// log of the upper tail Phi-bar(z); stable far into the tail where erfc underflows.
inline double normal_log_sf(double z) {
    if (z < 20.0) {
        return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
    }
    // Asymptotic expansion: Phi-bar(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return normal_log_pdf(z) - std::log(z) + std::log(series);
}

inline double normal_log_cdf(double z) {
    if (z > -20.0) return std::log(normal_cdf(z));
    return normal_log_sf(-z);
}

// Inverse standard normal CDF: Acklam's rational approximation plus one
// Halley refinement against erfc, good to full double precision for our use.
inline double normal_quantile(double p) {
    if (p <= 0.0) return kNegInf;
    if (p >= 1.0) return kPosInf;
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley step.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

// Deterministic uniform(0,1) stream; the half-ulp offset keeps draws strictly
// inside the open interval so quantile transforms never see 0 or 1.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() {
        const std::uint64_t r = engine_();
        return static_cast<double>(r >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace subweibull

#endif  // SUBWEIBULL_MATH_UTIL_HPP
