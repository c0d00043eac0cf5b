#pragma once

// Adaptive Gauss-Kronrod 15(7) quadrature. The 15-point Kronrod rule gives
// the value, the embedded 7-point Gauss rule the error estimate; intervals
// are bisected until the local estimate meets the (scaled) tolerance.

#include <array>
#include <cmath>

#include "mathieu/errors.hpp"

namespace mathieu {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long intervals = 0;
};

namespace gk15 {

extern const std::array<double, 8> xgk;  // Kronrod abscissae (positive half)
extern const std::array<double, 8> wgk;  // Kronrod weights
extern const std::array<double, 4> wg;   // Gauss weights for xgk[1,3,5,7]

template <class F>
void apply(F&& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; j++) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

template <class F>
QuadResult adaptive(F&& f, double a, double b, double tol, int depth, int max_depth) {
    double val, err;
    apply(f, a, b, val, err);
    QuadResult r{val, err, 1};
    if (err <= tol || b - a == 0.0) return r;
    if (depth >= max_depth)
        throw NoConvergence("quadrature: interval subdivision limit reached");
    const double c = 0.5 * (a + b);
    QuadResult left = adaptive(f, a, c, 0.5 * tol, depth + 1, max_depth);
    QuadResult right = adaptive(f, c, b, 0.5 * tol, depth + 1, max_depth);
    return {left.value + right.value, left.error_estimate + right.error_estimate,
            left.intervals + right.intervals};
}

} // namespace gk15

// Integrate f over [a, b] (a <= b) to absolute tolerance abs_tol plus
// relative tolerance rel_tol against a first whole-interval estimate.
template <class F>
QuadResult integrate_gk15(F&& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 1e-14) {
    if (a == b) return {0.0, 0.0, 0};
    double val, err;
    gk15::apply(f, a, b, val, err);
    double tol = abs_tol + rel_tol * std::abs(val);
    if (err <= tol) return {val, err, 1};
    return gk15::adaptive(f, a, b, tol, 0, 60);
}

} // namespace mathieu
