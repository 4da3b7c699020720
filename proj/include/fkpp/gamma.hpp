#pragma once

#include <cmath>
#include <limits>

namespace fkpp {

/// sin(pi*x) with the range reduction done on x, so it is exact at integers.
inline double sinpi(double x) {
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    // nearbyint of a double is exactly representable; parity decides the sign
    return (std::fmod(std::fabs(n), 2.0) == 1.0) ? -s : s;
}

inline long double sinpil(long double x) {
    long double n = std::nearbyint(x);
    long double r = x - n;
    long double s = std::sin(M_PIl * r);
    return (std::fmod(std::fabs(n), 2.0L) == 1.0L) ? -s : s;
}

/// Reciprocal gamma 1/Gamma(x), entire in x. Returns 0 at poles of Gamma.
inline double rgamma(double x) {
    if (x > 0.5) {
        if (x <= 171.0) return 1.0 / std::tgamma(x);
        return std::exp(-std::lgamma(x));  // underflows to 0 for large x
    }
    // reflection: 1/Gamma(x) = Gamma(1-x) * sin(pi x) / pi
    double s = sinpi(x);
    if (s == 0.0) return 0.0;
    double lg = std::lgamma(1.0 - x);
    if (lg > 700.0) {  // would overflow; saturate with the right sign
        return std::copysign(std::numeric_limits<double>::infinity(), s);
    }
    return s / M_PI * std::exp(lg);
}

inline long double rgammal(long double x) {
    if (x > 0.5L) {
        if (x <= 1750.0L) return std::exp(-std::lgamma(x));
        return 0.0L;
    }
    long double s = sinpil(x);
    if (s == 0.0L) return 0.0L;
    return s / M_PIl * std::exp(std::lgamma(1.0L - x));
}

}  // namespace fkpp
