#ifndef SUBWEIBULL_ERRORS_HPP
#define SUBWEIBULL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace subweibull {

// Split requested on a law with Pr(X<0) in {0,1}; use the law (or its
// negation) directly instead.
struct DegenerateSplit : std::runtime_error {
    explicit DegenerateSplit(const std::string& what) : std::runtime_error(what) {}
};

// Split requested on a two-sided law whose conditioned halves fall outside
// the distribution catalog (e.g. a non-centered Gaussian).
struct SplitNotRepresentable : std::runtime_error {
    explicit SplitNotRepresentable(const std::string& what) : std::runtime_error(what) {}
};

// Tilt parameter outside the open interval where the transform is finite.
struct TiltOutsideInterval : std::runtime_error {
    explicit TiltOutsideInterval(const std::string& what) : std::runtime_error(what) {}
};

// Some absolute moment E|X|^p is infinite, so moment-based diagnostics are
// undefined: the input is not subweibull for any exponent.
struct MomentDivergence : std::runtime_error {
    explicit MomentDivergence(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent analysis configuration; carries every violation.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what, std::vector<std::string> v = {})
        : std::runtime_error(what), violations(std::move(v)) {}
    std::vector<std::string> violations;
};

// Filesystem failure while writing analysis outputs.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subweibull

#endif  // SUBWEIBULL_ERRORS_HPP
