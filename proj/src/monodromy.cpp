#include "mathieu/monodromy.hpp"

#include <cmath>

#include "mathieu/implicit_midpoint.hpp"
#include "mathieu/numerics.hpp"

namespace mathieu {

namespace {

constexpr double kStiffnessGuardRatio = 1e4;

// floor_steps is the caller's step budget for this span: the full
// cfg.stiff_steps for a single integration, or its per-segment share when a
// larger interval has been split (otherwise the floor would multiply by the
// segment count).
long stiff_step_count(const MathieuParams& p, double span, long floor_steps) {
    double needed = 4.0 * p.gamma * span / p.m;
    long n = floor_steps;
    if (needed > static_cast<double>(n)) n = static_cast<long>(std::ceil(needed));
    return std::max<long>(n, 16);
}

void check_guard(const MathieuParams& p, const IntegratorConfig& cfg) {
    if (!cfg.stiff_mode && stiffness_guarded(p))
        throw StepUnderflow(
            "stiffness guard: gamma/(m*omega) > 1e4; explicit steps would "
            "collapse (enable stiff_mode for the implicit midpoint fallback)");
}

// Propagate the fundamental matrix over [t0, t1] starting from the identity.
Eigen::Matrix2d fundamental_over(const MathieuParams& p, double t0, double t1,
                                 const IntegratorConfig& cfg, long stiff_floor) {
    auto A = [&p](double t) { return system_matrix(p, t); };
    if (cfg.stiff_mode && stiffness_guarded(p)) {
        auto traj = integrate_implicit_midpoint(
            A, t0, t1, Eigen::Matrix2d(Eigen::Matrix2d::Identity()),
            stiff_step_count(p, t1 - t0, stiff_floor));
        return traj.states.back();
    }
    auto rhs = [&p](double t, const Eigen::Matrix2d& Y) -> Eigen::Matrix2d {
        return system_matrix(p, t) * Y;
    };
    auto traj = integrate_dop853(rhs, t0, t1, Eigen::Matrix2d(Eigen::Matrix2d::Identity()),
                                 cfg, /*store_dense=*/false);
    return traj.states.back();
}

} // namespace

Eigen::Matrix2d system_matrix(const MathieuParams& p, double t) {
    Eigen::Matrix2d A;
    A << 0.0, 1.0, p.epsilon * std::cos(p.omega * t) / p.m, -p.gamma / p.m;
    return A;
}

bool stiffness_guarded(const MathieuParams& p) {
    return p.gamma / (p.m * p.omega) > kStiffnessGuardRatio;
}

StateTrajectory integrate(const MathieuParams& p, const Eigen::Vector2d& initial,
                          double t_end, const IntegratorConfig& cfg) {
    require_valid(p);
    if (!(t_end > 0.0)) throw InvalidParams("integrate: t_end must be > 0");
    check_guard(p, cfg);
    if (cfg.stiff_mode && stiffness_guarded(p)) {
        auto A = [&p](double t) { return system_matrix(p, t); };
        return integrate_implicit_midpoint(A, 0.0, t_end, Eigen::Vector2d(initial),
                                           stiff_step_count(p, t_end, cfg.stiff_steps));
    }
    auto rhs = [&p](double t, const Eigen::Vector2d& y) -> Eigen::Vector2d {
        return system_matrix(p, t) * y;
    };
    return integrate_dop853(rhs, 0.0, t_end, initial, cfg);
}

MonodromyFactorization monodromy_factorized(const MathieuParams& p,
                                            const IntegratorConfig& cfg) {
    require_valid(p);
    check_guard(p, cfg);
    const double T = p.period();
    int nseg = static_cast<int>(std::ceil(p.gamma * T / (4.0 * p.m)));
    nseg = std::max(nseg, 1);

    MonodromyFactorization out;
    out.matrix = Eigen::Matrix2d::Identity();
    out.segments = nseg;
    const long per_segment_floor = (cfg.stiff_steps + nseg - 1) / nseg;
    KahanSum log_det;
    for (int k = 0; k < nseg; k++) {
        double t0 = T * static_cast<double>(k) / nseg;
        double t1 = k + 1 == nseg ? T : T * static_cast<double>(k + 1) / nseg;
        Eigen::Matrix2d seg = fundamental_over(p, t0, t1, cfg, per_segment_floor);
        double d = det2x2_exact(seg(0, 0), seg(0, 1), seg(1, 0), seg(1, 1));
        if (!(d > 0.0))
            throw DomainError("monodromy: segment map has non-positive determinant");
        log_det.add(std::log(d));
        out.matrix = seg * out.matrix;
    }
    out.log_det = log_det.value();
    return out;
}

Eigen::Matrix2d monodromy_matrix(const MathieuParams& p, const IntegratorConfig& cfg) {
    return monodromy_factorized(p, cfg).matrix;
}

FloquetResult floquet_exponents(const Eigen::Matrix2d& mono, const MathieuParams& p) {
    require_valid(p);
    const double T = p.period();
    const double tr = mono(0, 0) + mono(1, 1);
    const double det = det2x2_exact(mono(0, 0), mono(0, 1), mono(1, 0), mono(1, 1));
    // (tr^2 - 4 det) rewritten to avoid cancellation between near-equal terms.
    const double disc =
        (mono(0, 0) - mono(1, 1)) * (mono(0, 0) - mono(1, 1)) + 4.0 * mono(0, 1) * mono(1, 0);
    if (disc < 0.0) throw ComplexMultipliers("floquet_exponents: discriminant < 0");
    const double sq = std::sqrt(disc);
    const double rho1 = 0.5 * (tr + sq);
    if (!(rho1 > 0.0)) throw NegativeMultiplier("floquet_exponents: rho_1 <= 0");
    const double rho2 = det / rho1;
    if (!(rho2 > 0.0)) throw NegativeMultiplier("floquet_exponents: rho_2 <= 0");

    FloquetResult r;
    r.monodromy = mono;
    r.multipliers = {rho1, rho2};
    r.period = T;
    r.lambda_max = std::log(rho1) / T;
    r.lambda_min = std::log(rho2) / T;
    r.log_det = std::log(det);
    const double w = p.gamma * T / p.m;  // det should equal e^{-w}
    r.abel_residual = std::abs(std::expm1(r.log_det + w));
    return r;
}

FloquetResult floquet(const MathieuParams& p, const IntegratorConfig& cfg) {
    const auto fact = monodromy_factorized(p, cfg);
    const Eigen::Matrix2d& M = fact.matrix;
    const double T = p.period();
    const double tr = M(0, 0) + M(1, 1);
    const double disc =
        (M(0, 0) - M(1, 1)) * (M(0, 0) - M(1, 1)) + 4.0 * M(0, 1) * M(1, 0);
    if (disc < 0.0) throw ComplexMultipliers("floquet: discriminant < 0");
    const double rho1 = 0.5 * (tr + std::sqrt(disc));
    if (!(rho1 > 0.0)) throw NegativeMultiplier("floquet: rho_1 <= 0");

    FloquetResult r;
    r.monodromy = M;
    r.period = T;
    r.log_det = fact.log_det;
    r.lambda_max = std::log(rho1) / T;
    // Exact exponent-sum identity; the small multiplier itself is the
    // difference of two nearly equal O(1) products and carries no precision.
    r.lambda_min = -p.gamma / p.m - r.lambda_max;
    r.multipliers = {rho1, std::exp(fact.log_det - std::log(rho1))};
    r.abel_residual = std::abs(std::expm1(fact.log_det + p.gamma * T / p.m));
    return r;
}

PeriodicPart periodic_part(const MathieuParams& p, const FloquetResult& result,
                           Branch branch, int grid_len, const IntegratorConfig& cfg) {
    require_valid(p);
    if (grid_len < 2) throw InvalidParams("periodic_part: grid_len must be >= 2");
    if (branch == Branch::Min) check_guard(p, cfg);

    const double T = p.period();
    const double lambda =
        branch == Branch::Max ? result.lambda_max : result.lambda_min;
    const double rho =
        branch == Branch::Max ? result.multipliers[0] : result.multipliers[1];
    const Eigen::Matrix2d& M = result.monodromy;

    // Eigenvector from the characteristic polynomial; the two closed forms
    // are proportional, pick the better-conditioned one.
    Eigen::Vector2d v1(M(0, 1), rho - M(0, 0));
    Eigen::Vector2d v2(rho - M(1, 1), M(1, 0));
    Eigen::Vector2d v = v1.norm() >= v2.norm() ? v1 : v2;
    if (v.norm() == 0.0)
        throw NonPeriodic("periodic_part: degenerate eigenvector");
    if (v(0) == 0.0)
        throw NonPeriodic("periodic_part: eigenvector has zero x-component");
    if (v(0) < 0.0) v = -v;

    // Co-moving frame u(t) = x(t) e^{-lambda t}: the chosen mode becomes
    // exactly T-periodic, the other scales by e^{(other-lambda)T} per period.
    auto rhs = [&p, lambda](double t, const Eigen::Vector2d& u) -> Eigen::Vector2d {
        double a = p.epsilon * std::cos(p.omega * t) / p.m -
                   lambda * p.gamma / p.m - lambda * lambda;
        double b = -(p.gamma / p.m + 2.0 * lambda);
        return Eigen::Vector2d(u(1), a * u(0) + b * u(1));
    };
    Eigen::Vector2d u0(v(0), v(1) - lambda * v(0));

    // Max branch: contaminant decays forward. Min branch: contaminant grows
    // forward like e^{(lambda_max-lambda_min)t}, so integrate backward from
    // t=T (where the eigenvector state recurs) and let it decay instead.
    Trajectory<Eigen::Vector2d> traj =
        branch == Branch::Max ? integrate_dop853(rhs, 0.0, T, u0, cfg)
                              : integrate_dop853(rhs, T, 0.0, u0, cfg);

    PeriodicPart part;
    part.branch = branch;
    part.grid.resize(grid_len);
    part.values.resize(grid_len);
    for (int k = 0; k < grid_len; k++) {
        double t = k + 1 == grid_len ? T : T * static_cast<double>(k) / (grid_len - 1);
        part.grid[k] = t;
        part.values[k] = traj.state_at(t)(0);
    }

    double pinned = p.gamma * p.gamma / 4.0 + p.m * p.epsilon;
    double target = pinned > 0.0 ? std::pow(pinned, -0.25) : 1.0;
    double scale = target / part.values.front();
    for (double& x : part.values) x *= scale;
    part.normalization = scale;

    double sup = 0.0;
    for (double x : part.values) sup = std::max(sup, std::abs(x));
    part.periodicity_residual = std::abs(part.values.back() - part.values.front());
    if (part.periodicity_residual > 1e-6 * sup)
        throw NonPeriodic("periodic_part: endpoint mismatch exceeds tolerance");
    return part;
}

} // namespace mathieu
