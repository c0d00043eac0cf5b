#pragma once

// Direct numerical Floquet analysis: integrate the damped Mathieu equation
// m x'' + gamma x' - x eps cos(omega t) = 0 over one period, build the
// monodromy matrix, extract multipliers/exponents, and recover the periodic
// parts of the two Floquet solutions.

#include <Eigen/Dense>

#include "mathieu/dop853.hpp"
#include "mathieu/params.hpp"
#include "mathieu/types.hpp"

namespace mathieu {

using StateTrajectory = Trajectory<Eigen::Vector2d>;

// First-order system matrix: (x, x')' = A(t) (x, x').
Eigen::Matrix2d system_matrix(const MathieuParams& p, double t);

// True when gamma/(m*omega) exceeds the stiffness guard and the explicit
// integrator is refused at default settings.
bool stiffness_guarded(const MathieuParams& p);

// Integrate from (x0, xdot0) at t=0 to t_end. Guarded parameters require
// cfg.stiff_mode (fixed-step implicit midpoint); otherwise DOP853 with dense
// output.
StateTrajectory integrate(const MathieuParams& p, const Eigen::Vector2d& initial,
                          double t_end, const IntegratorConfig& cfg = {});

// Period map with its determinant accumulated segmentwise in log space.
// Splitting the period keeps each factor's determinant O(1), so log_det
// tracks -gamma*T/m to near machine precision even when the product's
// determinant underflows the cancellation floor.
struct MonodromyFactorization {
    Eigen::Matrix2d matrix;  // ordered product of the segment maps
    double log_det = 0.0;    // sum of segment log-determinants
    int segments = 1;
};

MonodromyFactorization monodromy_factorized(const MathieuParams& p,
                                            const IntegratorConfig& cfg = {});

Eigen::Matrix2d monodromy_matrix(const MathieuParams& p,
                                 const IntegratorConfig& cfg = {});

// Multipliers/exponents of a given period map: eigenvalues from the
// characteristic polynomial, lambda_i = ln(rho_i)/T. Throws
// ComplexMultipliers / NegativeMultiplier when the spectrum leaves the real
// positive regime under study.
FloquetResult floquet_exponents(const Eigen::Matrix2d& mono, const MathieuParams& p);

// Full pipeline: factorized monodromy, lambda_max from the dominant
// eigenvalue, lambda_min = -gamma/m - lambda_max (exact exponent-sum
// identity; the small multiplier itself is ill-conditioned), abel_residual
// from the segmentwise log-determinant.
FloquetResult floquet(const MathieuParams& p, const IntegratorConfig& cfg = {});

// Periodic part P(t) = x(t) e^{-lambda t} of the chosen Floquet solution,
// sampled on a uniform grid over one period and normalized so that
// P(0) = (gamma^2/4 + m*eps)^{-1/4}. The min branch integrates the co-moving
// system backward from t=T so the contaminating fast mode decays.
PeriodicPart periodic_part(const MathieuParams& p, const FloquetResult& result,
                           Branch branch, int grid_len = 256,
                           const IntegratorConfig& cfg = {});

} // namespace mathieu
