#pragma once

// Infinite-determinant method: truncated centered determinants of the
// tridiagonal Fourier-coefficient matrix, their limit delta0, closed-form
// series bounds, and the characteristic exponents recovered from delta0 via
// the cosh identity cosh(2*pi*c/omega) = 1 - delta0 + delta0*cosh(F),
// F = pi*gamma/(omega*m).

#include <vector>

#include "mathieu/params.hpp"
#include "mathieu/types.hpp"

namespace mathieu {

struct HillCoefficients {
    double g0;  // -(gamma/2m)^2
    double g1;  // -eps/2m (same for the -1 side band)
};

HillCoefficients hill_coefficients(const MathieuParams& p);

// Off-diagonal ratio c_n = (eps/2m) / ((n*omega)^2 + (gamma/2m)^2).
double c_n(const MathieuParams& p, long n);

// Determinant of the centered (2n+1)x(2n+1) truncation, evaluated by a
// two-term recurrence over the palindromic pair products p_k = c_{k-1} c_k
// (O(n), no matrix assembly). Matches the dense LU evaluation to machine
// precision.
double det_truncated(const MathieuParams& p, long n);

// Same determinant via dense LU factorization; the oracle for the
// recurrence. Guarded at n <= 2000 (dense cost).
double det_truncated_direct(const MathieuParams& p, long n);

// Intermediate values of the determinant recurrence for inspection/tests.
struct DeterminantTable {
    long n = 0;
    std::vector<double> c;           // c_0 .. c_n
    std::vector<double> det_values;  // det(M_3), det(M_5), ..., det(M_{2n+1})
    std::vector<double> f_values;    // companion sequence of the recurrence
};

DeterminantTable determinant_table(const MathieuParams& p, long n);

// Converged determinant limit: adaptive doubling of the half-width starting
// from n0 = ceil(4*gamma/(m*omega)) until successive doublings agree to tol
// relatively. Throws NoConvergence past half-width 1e6.
struct Delta0Result {
    double delta0 = 1.0;
    long truncation_n = 0;
};

Delta0Result delta0(const MathieuParams& p, double tol = 1e-12);

// Partial sum 2 * sum_{n=0}^{terms-1} c_n c_{n+1} (compensated).
double series_s_bruteforce(const MathieuParams& p, long terms);

// Closed form of the upper squeeze bound 2 * sum_{n>=0} c_n^2, via the
// derivative of the coth sum: with a = (gamma/(2 m omega))^2, u = pi sqrt(a),
//   sum_{n>=0} (n^2+a)^{-2} = 1/(2a^2) + pi coth(u)/(4 a^{3/2})
//                             + pi^2 csch^2(u)/(4a),
// scaled by eps^2/(2 m^2 omega^4).
double series_s_closed(const MathieuParams& p);

// Matching lower bound 2 * sum_{n>=1} c_n^2 = series_s_closed - 2 c_0^2.
double series_s_lower_closed(const MathieuParams& p);

struct ExponentTriple {
    double c = 0.0;
    double lambda_max = 0.0;
    double lambda_min = 0.0;
};

// Exponents from the determinant limit. Routes to the direct cosh solve for
// F = pi*gamma/(omega*m) <= 700 and to the log-domain evaluation beyond
// (cosh overflows); both evaluate the same identity.
ExponentTriple exponent_from_delta(const MathieuParams& p, double delta0);

// The two paths individually, for cross-checks where both are finite.
ExponentTriple exponent_from_delta_direct(const MathieuParams& p, double delta0);
ExponentTriple exponent_from_delta_log(const MathieuParams& p, double delta0);

// Full pipeline: delta0 to tolerance, then exponents.
HillResult hill_analyze(const MathieuParams& p, double tol = 1e-12);

} // namespace mathieu
