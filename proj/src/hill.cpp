#include "mathieu/hill.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mathieu/numerics.hpp"

namespace mathieu {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr long kDelta0Cap = 1'000'000;

double half_bandwidth_ratio(const MathieuParams& p) {
    return p.gamma / (2.0 * p.m);
}

// Solve cosh(2 pi c / omega) = 1 + delta0*(cosh(F) - 1) for c when cosh(F)
// is representable.
ExponentTriple direct_solve(const MathieuParams& p, double d0, double F) {
    const double sh = std::sinh(0.5 * F);
    const double arg = 1.0 + d0 * (2.0 * sh * sh);  // 1 + d0*(cosh F - 1)
    if (!(arg >= 1.0) || !std::isfinite(arg))
        throw DomainError("exponent_from_delta: cosh identity has no real solution");
    const double c = (p.omega / (2.0 * kPi)) * std::acosh(arg);
    ExponentTriple out;
    out.c = c;
    out.lambda_max = c - half_bandwidth_ratio(p);
    out.lambda_min = -c - half_bandwidth_ratio(p);
    return out;
}

// Same identity evaluated in log space: with y the cosh argument above,
//   ln y = ln(d0) - ln 2 + F + log1p(q),  q = e^{-2F} + 2(1-d0)e^{-F}/d0,
//   acosh(y) = ln(2y) - u/4 - 3u^2/32 - 5u^3/96 + O(u^4),  u = 1/y^2,
// so lambda_max = (omega/2pi) (ln d0 + log1p(q) - tail). All corrections
// underflow once F > ~745, leaving lambda_max = (omega/2pi) ln d0.
ExponentTriple log_solve(const MathieuParams& p, double d0, double F) {
    const double q = std::exp(-2.0 * F) + 2.0 * (1.0 - d0) * std::exp(-F) / d0;
    const double lny = std::log(d0) - std::log(2.0) + F + std::log1p(q);
    const double u = std::exp(-2.0 * lny);
    const double tail = u * (0.25 + u * (3.0 / 32.0 + u * (5.0 / 96.0)));
    ExponentTriple out;
    out.lambda_max =
        (p.omega / (2.0 * kPi)) * (std::log(d0) + std::log1p(q) - tail);
    out.lambda_min = -p.gamma / p.m - out.lambda_max;
    out.c = out.lambda_max + half_bandwidth_ratio(p);
    return out;
}

void check_delta0_range(double d0) {
    if (!(d0 > 0.0) || !(d0 <= 1.0) || !std::isfinite(d0))
        throw DomainError("exponent_from_delta: delta0 must lie in (0, 1]");
}

ExponentTriple exact_unit_delta(const MathieuParams& p) {
    return {half_bandwidth_ratio(p), 0.0, -p.gamma / p.m};
}

} // namespace

HillCoefficients hill_coefficients(const MathieuParams& p) {
    const double h = half_bandwidth_ratio(p);
    return {-h * h, -p.epsilon / (2.0 * p.m)};
}

double c_n(const MathieuParams& p, long n) {
    const double h = half_bandwidth_ratio(p);
    const double nw = static_cast<double>(n) * p.omega;
    return (p.epsilon / (2.0 * p.m)) / (nw * nw + h * h);
}

DeterminantTable determinant_table(const MathieuParams& p, long n) {
    if (n < 1) throw InvalidParams("determinant_table: n must be >= 1");
    DeterminantTable t;
    t.n = n;
    t.c.resize(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; k++) t.c[static_cast<std::size_t>(k)] = c_n(p, k);
    t.det_values.reserve(static_cast<std::size_t>(n));
    t.f_values.reserve(static_cast<std::size_t>(n));

    // Two-term recurrence over pair products p_k = c_{k-1} c_k, expanding the
    // centered tridiagonal determinant symmetrically from the middle row:
    //   b_k = a_{k-1} - p_k b_{k-1}
    //   a_k = b_k - p_k b_{k-1} + p_k^2 a_{k-2}
    // with a_{-1} = 0, a_0 = b_0 = 1; a_k = det(M_{2k+1}).
    double a_prev2 = 0.0;  // a_{k-2}
    double a_prev = 1.0;   // a_{k-1}
    double b_prev = 1.0;   // b_{k-1}
    for (long k = 1; k <= n; k++) {
        const double pk =
            t.c[static_cast<std::size_t>(k - 1)] * t.c[static_cast<std::size_t>(k)];
        const double bk = a_prev - pk * b_prev;
        const double ak = bk - pk * b_prev + pk * pk * a_prev2;
        t.f_values.push_back(bk);
        t.det_values.push_back(ak);
        a_prev2 = a_prev;
        a_prev = ak;
        b_prev = bk;
    }
    return t;
}

double det_truncated(const MathieuParams& p, long n) {
    if (n < 1) throw InvalidParams("det_truncated: n must be >= 1");
    double a_prev2 = 0.0, a_prev = 1.0, b_prev = 1.0;
    double c_prev = c_n(p, 0);
    double ak = 1.0;
    for (long k = 1; k <= n; k++) {
        const double ck = c_n(p, k);
        const double pk = c_prev * ck;
        const double bk = a_prev - pk * b_prev;
        ak = bk - pk * b_prev + pk * pk * a_prev2;
        a_prev2 = a_prev;
        a_prev = ak;
        b_prev = bk;
        c_prev = ck;
    }
    return ak;
}

double det_truncated_direct(const MathieuParams& p, long n) {
    if (n < 1) throw InvalidParams("det_truncated_direct: n must be >= 1");
    if (n > 2000) throw InvalidParams("det_truncated_direct: n > 2000 (dense cost guard)");
    const long dim = 2 * n + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (long i = 0; i < dim; i++) {
        const long r = i - n;
        const double cr = c_n(p, std::labs(r));
        M(i, i) = 1.0;
        if (i > 0) M(i, i - 1) = cr;
        if (i + 1 < dim) M(i, i + 1) = cr;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0)
        throw SingularTruncation("det_truncated_direct: zero pivot");
    return lu.determinant();
}

Delta0Result delta0(const MathieuParams& p, double tol) {
    if (!(tol > 0.0)) throw InvalidParams("delta0: tol must be > 0");
    long n = static_cast<long>(std::ceil(4.0 * p.gamma / (p.m * p.omega)));
    n = std::max<long>(n, 1);
    double prev = det_truncated(p, n);
    while (true) {
        const long n2 = 2 * n;
        if (n2 > kDelta0Cap)
            throw NoConvergence("delta0: truncation cap exceeded");
        const double cur = det_truncated(p, n2);
        if (std::abs(cur - prev) < tol * std::abs(cur)) return {cur, n2};
        prev = cur;
        n = n2;
    }
}

double series_s_bruteforce(const MathieuParams& p, long terms) {
    if (terms < 1) throw InvalidParams("series_s_bruteforce: terms must be >= 1");
    KahanSum s;
    double prev = c_n(p, 0);
    for (long k = 0; k < terms; k++) {
        const double next = c_n(p, k + 1);
        s.add(prev * next);
        prev = next;
    }
    return 2.0 * s.value();
}

double series_s_closed(const MathieuParams& p) {
    if (p.epsilon == 0.0) return 0.0;
    const double h = half_bandwidth_ratio(p);
    const double a = (h / p.omega) * (h / p.omega);
    const double u = kPi * std::sqrt(a);
    const double q = std::exp(-2.0 * u);
    const double coth = 1.0 + 2.0 * q / (1.0 - q);
    const double csch2 = 4.0 * q / ((1.0 - q) * (1.0 - q));
    const double s2 = 0.5 / (a * a) + kPi * coth / (4.0 * a * std::sqrt(a)) +
                      kPi * kPi * csch2 / (4.0 * a);
    const double scale =
        p.epsilon * p.epsilon /
        (2.0 * p.m * p.m * p.omega * p.omega * p.omega * p.omega);
    return scale * s2;
}

double series_s_lower_closed(const MathieuParams& p) {
    const double c0 = c_n(p, 0);
    return series_s_closed(p) - 2.0 * c0 * c0;
}

ExponentTriple exponent_from_delta_direct(const MathieuParams& p, double d0) {
    check_delta0_range(d0);
    if (d0 == 1.0) return exact_unit_delta(p);
    const double F = kPi * p.gamma / (p.omega * p.m);
    if (F > 709.0)
        throw DomainError("exponent_from_delta_direct: cosh argument overflows");
    return direct_solve(p, d0, F);
}

ExponentTriple exponent_from_delta_log(const MathieuParams& p, double d0) {
    check_delta0_range(d0);
    if (d0 == 1.0) return exact_unit_delta(p);
    return log_solve(p, d0, kPi * p.gamma / (p.omega * p.m));
}

ExponentTriple exponent_from_delta(const MathieuParams& p, double d0) {
    check_delta0_range(d0);
    if (d0 == 1.0) return exact_unit_delta(p);
    const double F = kPi * p.gamma / (p.omega * p.m);
    return F > kHillLogDomainThreshold ? log_solve(p, d0, F) : direct_solve(p, d0, F);
}

HillResult hill_analyze(const MathieuParams& p, double tol) {
    const Delta0Result d = delta0(p, tol);
    const ExponentTriple e = exponent_from_delta(p, d.delta0);
    HillResult r;
    r.delta0 = d.delta0;
    r.truncation_n = d.truncation_n;
    r.c_exponent = e.c;
    r.lambda_max_hill = e.lambda_max;
    r.lambda_min_hill = e.lambda_min;
    r.used_log_domain = kPi * p.gamma / (p.omega * p.m) > kHillLogDomainThreshold;
    return r;
}

} // namespace mathieu
