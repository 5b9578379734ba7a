#ifndef SUBWEIBULL_EXTENDED_REAL_HPP
#define SUBWEIBULL_EXTENDED_REAL_HPP

#include <cmath>
#include <limits>

#include "subweibull/math_util.hpp"

namespace subweibull {

// A nonnegative quantity that is either finite (kept as a natural logarithm)
// or +infinity. Exponential-moment integrals return this so that divergence
// is a value, not an error. The stored log may itself saturate near DBL_MAX
// for quantities like the Poisson MGF at extreme arguments; the finiteness
// flag is what downstream bisections consume.
class ExtendedReal {
public:
    static ExtendedReal from_log(double log_value) {
        ExtendedReal r;
        r.finite_ = true;
        r.log_value_ = std::isinf(log_value) && log_value > 0
                           ? std::numeric_limits<double>::max()
                           : log_value;
        return r;
    }
    static ExtendedReal from_value(double value) { return from_log(std::log(value)); }
    static ExtendedReal infinity() {
        ExtendedReal r;
        r.finite_ = false;
        r.log_value_ = kPosInf;
        return r;
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    // Log of the value; +inf when the value is infinite.
    double log_value() const { return finite_ ? log_value_ : kPosInf; }

    // Exponentiation happens only here, at presentation; values whose log
    // exceeds ~log(1e300) come back as +inf doubles.
    double value() const {
        if (!finite_) return kPosInf;
        return std::exp(log_value_);
    }

    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.finite_ && !b.finite_) return true;
        if (!a.finite_) return false;
        return a.log_value_ < b.log_value_;
    }
    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }

private:
    double log_value_ = 0.0;
    bool finite_ = true;
};

}  // namespace subweibull

#endif  // SUBWEIBULL_EXTENDED_REAL_HPP
