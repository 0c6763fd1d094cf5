#pragma once

#include <cmath>
#include <stdexcept>

namespace hempss {

// Generalized Laguerre polynomial L_m^{(alpha)}(x) by the ascending
// three-term recurrence, in natural scale.
inline double laguerre(int m, int alpha, double x) {
    if (m < 0 || alpha < 0) throw std::invalid_argument("laguerre: m and alpha must be >= 0");
    if (m == 0) return 1.0;
    double lm1 = 1.0;                  // L_0
    double l = 1.0 + alpha - x;        // L_1
    for (int k = 2; k <= m; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * l - (k - 1.0 + alpha) * lm1) / k;
        lm1 = l;
        l = next;
    }
    return l;
}

// log(n!) via lgamma.
inline double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
    return std::lgamma(double(n) + 1.0);
}

}  // namespace hempss
