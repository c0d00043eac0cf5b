#pragma once

#include <cmath>

namespace mathieu {

// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// a*d - b*c with ~1.5 ulp error (Kahan's algorithm via fused multiply-add).
// The plain expression loses all digits when the two products nearly cancel.
inline double det2x2_exact(double a, double b, double c, double d) {
    double w = b * c;
    double e = std::fma(-b, c, w);
    double det = std::fma(a, d, -w);
    return det + e;
}

} // namespace mathieu
