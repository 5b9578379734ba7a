#ifndef SUBWEIBULL_VERSION_HPP
#define SUBWEIBULL_VERSION_HPP

namespace subweibull {

inline constexpr const char* kVersion = "1.0.0";

}

#endif  // SUBWEIBULL_VERSION_HPP
