#pragma once

// Result types shared across the three methods.

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "mathieu/params.hpp"

namespace mathieu {

enum class Branch { Max, Min };

// Floquet data extracted from the period map: multipliers rho_1 >= rho_2 > 0,
// exponents lambda_i = ln(rho_i)/T, and the relative deviation of
// det(monodromy) from the Wronskian value e^{-gamma T / m} (Abel identity).
struct FloquetResult {
    Eigen::Matrix2d monodromy;
    std::array<double, 2> multipliers{};  // descending
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double period = 0.0;
    double abel_residual = 0.0;
    // ln det(monodromy) accumulated over integration segments; immune to the
    // cancellation that hits the determinant of the assembled product when
    // e^{-gamma T/m} is tiny.
    double log_det = 0.0;
};

// Uniform samples of a period-T function. `normalization` records the scalar
// applied to pin values[0]; `periodicity_residual` is |P(T)-P(0)| before any
// tolerance check.
struct PeriodicPart {
    std::vector<double> grid;    // uniform, grid.front() = 0, grid.back() = T
    std::vector<double> values;  // same length
    double normalization = 1.0;
    Branch branch = Branch::Max;
    double periodicity_residual = 0.0;
};

// Output of the truncated-determinant pipeline: the converged determinant
// limit, the half-width at which it converged, and the exponents recovered
// from it. `used_log_domain` records which evaluation path produced the
// exponents (switchover at pi*gamma/(omega*m) > 700, the safe cosh argument
// bound in binary64).
struct HillResult {
    double delta0 = 1.0;
    long truncation_n = 0;
    double c_exponent = 0.0;
    double lambda_max_hill = 0.0;
    double lambda_min_hill = 0.0;
    bool used_log_domain = false;
};

inline constexpr double kHillLogDomainThreshold = 700.0;

} // namespace mathieu
