#pragma once

// First-order WKB predictions for the damped Mathieu equation in the
// no-turning-point regime gamma^2/4 > m|eps|: fundamental solutions in
// Olver form, predicted exponents and periodic parts, and the variation
// integrals bounding the WKB error.

#include <utility>
#include <vector>

#include "mathieu/params.hpp"
#include "mathieu/types.hpp"

namespace mathieu {

enum class PhaseMethod { Quadrature, Taylor };
enum class FundamentalBranch { Grow, Decay };

// (1/m) * integral_0^t sqrt(gamma^2/4 + m eps cos(omega s)) ds.
// Quadrature: adaptive Gauss-Kronrod. Taylor: third-order closed form
// gamma t/(2m) + eps sin(omega t)/(gamma omega)
//   - (m eps^2 / (2 gamma^3)) (t + sin(2 omega t)/(2 omega)).
double phase_integral(const MathieuParams& p, double t, PhaseMethod method);

// phase_integral(t) - gamma t/(2m), evaluated without cancellation: the
// quadrature form integrates m eps cos(omega s) / (sqrt(f) + gamma/2)
// directly, the taylor form drops the exactly-cancelling leading term.
double phase_minus_damping(const MathieuParams& p, double t, PhaseMethod method);

// Samples of the WKB fundamental solutions
//   grow:  f^{-1/4} exp(+phase - gamma t/(2m))
//   decay: f^{-1/4} exp(-phase - gamma t/(2m))
// evaluated in log space and exponentiated.
std::vector<double> wkb_fundamental(const MathieuParams& p,
                                    const std::vector<double>& grid,
                                    FundamentalBranch branch,
                                    PhaseMethod method = PhaseMethod::Quadrature);

// Predicted exponents (-m eps^2 / (2 gamma^3), -gamma/m).
std::pair<double, double> wkb_exponents(const MathieuParams& p);

// Predicted periodic parts f(t)^{-1/4} exp(+-eps sin(omega t)/(gamma omega)).
PeriodicPart wkb_periodic(const MathieuParams& p, const std::vector<double>& grid,
                          Branch branch);

struct WkbPrediction {
    double lambda_max_pred = 0.0;
    double lambda_min_pred = 0.0;
    PeriodicPart p_max_pred;
    PeriodicPart p_min_pred;
    PhaseMethod phase_method = PhaseMethod::Taylor;
};

WkbPrediction wkb_prediction(const MathieuParams& p, int grid_len = 256,
                             PhaseMethod method = PhaseMethod::Taylor);

// Variation integrals of the Olver envelope phi = f^{-1/4}:
//   f1 = integral_0^t phi |phi''|,  f2 = integral_t^horizon phi |phi''|,
// with phi'' formed analytically. eps_bound_j = e^{m f_j} - 1 (the
// nonnegative reading of the envelope; see olver_bound_variants for the
// alternative). delta_bound = e^{5 |eps| omega m^2 t / (2 gamma^3)} - 1.
struct ErrorEnvelope {
    double f1 = 0.0;
    double f2 = 0.0;
    double eps_bound_1 = 0.0;
    double eps_bound_2 = 0.0;
    double delta_bound = 0.0;
};

ErrorEnvelope olver_error_envelope(const MathieuParams& p, double t, double horizon);

// Two published readings of the envelope bound disagree dimensionally; both
// are reported so downstream output can show them side by side:
// as_printed_j = m e^{f_j} / 2 - 1 (negative for small f_j and m < 2),
// alternative_j = e^{m f_j} - 1 (nonnegative, vanishes as m -> 0).
struct OlverBoundVariants {
    double as_printed_1 = 0.0;
    double as_printed_2 = 0.0;
    double alternative_1 = 0.0;
    double alternative_2 = 0.0;
};

OlverBoundVariants olver_bound_variants(const MathieuParams& p, double t, double horizon);

// The envelope phi = f^{-1/4} and its analytic derivatives (unit-tested
// against finite differences).
double envelope_phi(const MathieuParams& p, double t);
double envelope_phi_derivative(const MathieuParams& p, double t);
double envelope_phi_second_derivative(const MathieuParams& p, double t);

} // namespace mathieu
