#include "mathieu/wkb.hpp"

#include <cmath>

#include "mathieu/quadrature.hpp"

namespace mathieu {

namespace {

void check_time(double t) {
    if (!(t >= 0.0)) throw InvalidParams("wkb: t must be >= 0");
}

double taylor_wobble(const MathieuParams& p, double t) {
    // eps sin(wt)/(gamma w) - (m eps^2 / 2 gamma^3)(t + sin(2wt)/(2w))
    const double g = p.gamma;
    return p.epsilon * std::sin(p.omega * t) / (g * p.omega) -
           (p.m * p.epsilon * p.epsilon / (2.0 * g * g * g)) *
               (t + std::sin(2.0 * p.omega * t) / (2.0 * p.omega));
}

} // namespace

double phase_integral(const MathieuParams& p, double t, PhaseMethod method) {
    require_wkb_valid(p);
    check_time(t);
    if (method == PhaseMethod::Taylor)
        return p.gamma * t / (2.0 * p.m) + taylor_wobble(p, t);
    if (p.epsilon == 0.0 || t == 0.0) return p.gamma * t / (2.0 * p.m);
    auto integrand = [&p](double s) {
        const double fs = p.f(s);
        if (!(fs > 0.0)) throw TurningPoint("phase_integral: f(s) <= 0");
        return std::sqrt(fs);
    };
    return integrate_gk15(integrand, 0.0, t, 1e-13, 1e-300).value / p.m;
}

double phase_minus_damping(const MathieuParams& p, double t, PhaseMethod method) {
    require_wkb_valid(p);
    check_time(t);
    if (method == PhaseMethod::Taylor) return taylor_wobble(p, t);
    if (p.epsilon == 0.0 || t == 0.0) return 0.0;
    // sqrt(f) - gamma/2 = m eps cos / (sqrt(f) + gamma/2); the 1/m scaling
    // cancels, so the small exponent is integrated directly.
    auto integrand = [&p](double s) {
        const double fs = p.f(s);
        if (!(fs > 0.0)) throw TurningPoint("phase_minus_damping: f(s) <= 0");
        return p.epsilon * std::cos(p.omega * s) / (std::sqrt(fs) + 0.5 * p.gamma);
    };
    return integrate_gk15(integrand, 0.0, t, 1e-13, 1e-16).value;
}

std::vector<double> wkb_fundamental(const MathieuParams& p,
                                    const std::vector<double>& grid,
                                    FundamentalBranch branch, PhaseMethod method) {
    require_wkb_valid(p);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        check_time(t);
        const double ft = p.f(t);
        if (!(ft > 0.0)) throw TurningPoint("wkb_fundamental: f(t) <= 0");
        double log_val = -0.25 * std::log(ft);
        if (branch == FundamentalBranch::Grow) {
            log_val += phase_minus_damping(p, t, method);
        } else {
            log_val -= phase_integral(p, t, method) + p.gamma * t / (2.0 * p.m);
        }
        out.push_back(std::exp(log_val));
    }
    return out;
}

std::pair<double, double> wkb_exponents(const MathieuParams& p) {
    require_valid(p);
    const double g = p.gamma;
    return {-p.m * p.epsilon * p.epsilon / (2.0 * g * g * g), -g / p.m};
}

PeriodicPart wkb_periodic(const MathieuParams& p, const std::vector<double>& grid,
                          Branch branch) {
    require_wkb_valid(p);
    const double sign = branch == Branch::Max ? 1.0 : -1.0;
    PeriodicPart part;
    part.branch = branch;
    part.grid = grid;
    part.values.reserve(grid.size());
    for (double t : grid) {
        const double ft = p.f(t);
        if (!(ft > 0.0)) throw TurningPoint("wkb_periodic: f(t) <= 0");
        part.values.push_back(
            std::pow(ft, -0.25) *
            std::exp(sign * p.epsilon * std::sin(p.omega * t) / (p.gamma * p.omega)));
    }
    part.normalization = 1.0;
    if (!part.values.empty())
        part.periodicity_residual = std::abs(part.values.back() - part.values.front());
    return part;
}

WkbPrediction wkb_prediction(const MathieuParams& p, int grid_len, PhaseMethod method) {
    if (grid_len < 2) throw InvalidParams("wkb_prediction: grid_len must be >= 2");
    const double T = p.period();
    std::vector<double> grid(static_cast<std::size_t>(grid_len));
    for (int k = 0; k < grid_len; k++)
        grid[static_cast<std::size_t>(k)] =
            k + 1 == grid_len ? T : T * static_cast<double>(k) / (grid_len - 1);
    WkbPrediction w;
    auto [lmax, lmin] = wkb_exponents(p);
    w.lambda_max_pred = lmax;
    w.lambda_min_pred = lmin;
    w.p_max_pred = wkb_periodic(p, grid, Branch::Max);
    w.p_min_pred = wkb_periodic(p, grid, Branch::Min);
    w.phase_method = method;
    return w;
}

double envelope_phi(const MathieuParams& p, double t) {
    const double ft = p.f(t);
    if (!(ft > 0.0)) throw TurningPoint("envelope_phi: f(t) <= 0");
    return std::pow(ft, -0.25);
}

double envelope_phi_derivative(const MathieuParams& p, double t) {
    const double ft = p.f(t);
    if (!(ft > 0.0)) throw TurningPoint("envelope_phi: f(t) <= 0");
    const double fp = -p.m * p.epsilon * p.omega * std::sin(p.omega * t);
    return -0.25 * std::pow(ft, -1.25) * fp;
}

double envelope_phi_second_derivative(const MathieuParams& p, double t) {
    const double ft = p.f(t);
    if (!(ft > 0.0)) throw TurningPoint("envelope_phi: f(t) <= 0");
    const double fp = -p.m * p.epsilon * p.omega * std::sin(p.omega * t);
    const double fpp = -p.m * p.epsilon * p.omega * p.omega * std::cos(p.omega * t);
    return (5.0 / 16.0) * std::pow(ft, -2.25) * fp * fp -
           0.25 * std::pow(ft, -1.25) * fpp;
}

ErrorEnvelope olver_error_envelope(const MathieuParams& p, double t, double horizon) {
    require_wkb_valid(p);
    if (!(t >= 0.0) || !(t <= horizon))
        throw InvalidParams("olver_error_envelope: need 0 <= t <= horizon");
    auto integrand = [&p](double s) {
        return envelope_phi(p, s) * std::abs(envelope_phi_second_derivative(p, s));
    };
    ErrorEnvelope e;
    e.f1 = t > 0.0 ? integrate_gk15(integrand, 0.0, t, 1e-11, 1e-14).value : 0.0;
    e.f2 = horizon > t ? integrate_gk15(integrand, t, horizon, 1e-11, 1e-14).value : 0.0;
    e.eps_bound_1 = std::expm1(p.m * e.f1);
    e.eps_bound_2 = std::expm1(p.m * e.f2);
    const double g = p.gamma;
    e.delta_bound =
        std::expm1(5.0 * std::abs(p.epsilon) * p.omega * p.m * p.m * t / (2.0 * g * g * g));
    return e;
}

OlverBoundVariants olver_bound_variants(const MathieuParams& p, double t, double horizon) {
    const ErrorEnvelope e = olver_error_envelope(p, t, horizon);
    OlverBoundVariants v;
    v.as_printed_1 = 0.5 * p.m * std::exp(e.f1) - 1.0;
    v.as_printed_2 = 0.5 * p.m * std::exp(e.f2) - 1.0;
    v.alternative_1 = e.eps_bound_1;
    v.alternative_2 = e.eps_bound_2;
    return v;
}

} // namespace mathieu
