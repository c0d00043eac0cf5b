// Acceptance gate: ten end-to-end checks of the library's advertised
// behavior, each printed as one [PASS]/[FAIL] line with the measured values.
// The process exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mathieu/hill.hpp"
#include "mathieu/monodromy.hpp"
#include "mathieu/numerics.hpp"
#include "mathieu/study.hpp"
#include "mathieu/wkb.hpp"

using namespace mathieu;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s - %s\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    if (!pass) g_failures++;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

ConvergenceReport run_sweep(Quantity q, double omega = 1.0) {
    SweepConfig cfg;
    cfg.quantity = q;
    cfg.base.omega = omega;
    cfg.m_values = default_m_grid();
    return sweep(cfg);
}

// ---------------------------------------------------------------------------
// 1. dominant-exponent convergence rate on the standard grid
void criterion_1(double& slope_out) {
    const ConvergenceReport rep = run_sweep(Quantity::ExponentMax);
    slope_out = rep.slope;
    const bool pass = rep.slope >= 1.8 && rep.slope <= 2.3 && rep.r_squared >= 0.99;
    std::string detail = "slope=" + fmt(rep.slope) + " (band [1.8, 2.3]), r2=" +
                         fmt(rep.r_squared) + " (min 0.99)";
    if (!pass)
        detail += "; measured rate is cubic: at gamma=epsilon=omega=1 the "
                  "quadratic coefficient of the lambda_max error cancels, so the "
                  "claimed quadratic band cannot be met honestly";
    report(1, "dominant-exponent rate", pass, detail);
}

// 2. subdominant exponent: stated reduction + same slope as criterion 1
void criterion_2(double c1_slope) {
    const ConvergenceReport rep = run_sweep(Quantity::ExponentMin);
    const bool states_reduction =
        rep.metadata.find("exponent_max") != std::string::npos;
    const double gap = std::abs(rep.slope - c1_slope);
    const bool pass = states_reduction && gap <= 1e-6;
    report(2, "subdominant-exponent reduction", pass,
           "reduction stated in report metadata: " +
               std::string(states_reduction ? "yes" : "no") +
               "; slope=" + fmt(rep.slope) + " matches criterion 1 to " + fmt(gap));
}

// 3. determinant-limit deficit: leading-order constant and sweep rate
void criterion_3() {
    MathieuParams p{0.005, 1.0, 1.0, 1.0};
    const double d0 = delta0(p, 1e-12).delta0;
    const double ratio = std::abs((1.0 - d0) / (p.m * kPi) - 1.0);
    const ConvergenceReport rep = run_sweep(Quantity::Delta0Deficit);
    const bool pass = ratio <= 0.05 && rep.slope >= 1.7 && rep.slope <= 2.4;
    report(3, "determinant-deficit leading order", pass,
           "|(1-delta0)/(m*pi) - 1|=" + fmt(ratio) + " at m=0.005 (max 0.05); " +
               "deficit slope=" + fmt(rep.slope) + " (band [1.7, 2.4])");
}

// 4. fixed-size truncation is second order while the limit deficit is first order
void criterion_4() {
    const ConvergenceReport rep = run_sweep(Quantity::TruncatedDet);
    std::vector<std::pair<double, double>> raw;
    for (double m : default_m_grid()) {
        MathieuParams p{m, 1.0, 1.0, 1.0};
        raw.emplace_back(m, 1.0 - delta0(p, 1e-12).delta0);
    }
    const FitResult raw_fit = fit_loglog(raw);
    const bool pass = rep.slope >= 1.9 && rep.slope <= 2.1 &&
                      raw_fit.slope >= 0.9 && raw_fit.slope <= 1.1;
    report(4, "fixed vs converged truncation orders", pass,
           "|1-det(M_3)| slope=" + fmt(rep.slope) + " (band [1.9, 2.1]); " +
               "|1-delta0| slope=" + fmt(raw_fit.slope) + " (band [0.9, 1.1])");
}

// 5. periodic-part convergence at two drive frequencies
void criterion_5() {
    const ConvergenceReport rep1 = run_sweep(Quantity::PeriodicMax, 1.0);
    const ConvergenceReport rep2 = run_sweep(Quantity::PeriodicMax, 2.0);

    std::vector<double> ratios;
    std::vector<std::pair<double, double>> w2_small;
    for (std::size_t i = 0; i < rep1.records.size(); i++) {
        const SweepRecord& a = rep1.records[i];
        const SweepRecord& b = rep2.records[i];
        if (a.flag.empty() && b.flag.empty() && a.error > 0.0)
            ratios.push_back(b.error / a.error);
        if (b.flag.empty() && b.m <= 0.2) w2_small.emplace_back(b.m, b.error);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    const double small_slope = fit_loglog(w2_small).slope;

    const bool slopes_ok = rep1.slope >= 0.8 && rep1.slope <= 1.3 &&
                           rep2.slope >= 0.8 && rep2.slope <= 1.3;
    const bool ratio_ok = median >= 0.35 && median <= 0.65;
    const bool pass = slopes_ok && ratio_ok;
    std::string detail = "slopes: omega=1 " + fmt(rep1.slope) + ", omega=2 " +
                         fmt(rep2.slope) + " (band [0.8, 1.3]); matched-m median "
                         "error ratio=" + fmt(median) + " (band [0.35, 0.65])";
    if (!slopes_ok)
        detail += "; the omega=2 fit is dragged above the band by the largest "
                  "unflagged masses near the regime boundary (restricted to "
                  "m <= 0.2 it refits to " + fmt(small_slope) + ")";
    report(5, "periodic-part convergence at two frequencies", pass, detail);
}

// 6. three-way exponent agreement: monodromy vs both determinant-limit paths
void criterion_6() {
    double worst = 0.0;
    for (double m : {0.1, 0.2, 0.3}) {
        MathieuParams p{m, 1.0, 1.0, 1.0};
        const double mono = floquet(p).lambda_max;
        const double d0 = delta0(p, 1e-12).delta0;
        const double dir = exponent_from_delta_direct(p, d0).lambda_max;
        const double lg = exponent_from_delta_log(p, d0).lambda_max;
        const double scale = std::abs(mono);
        worst = std::max({worst, std::abs(mono - dir) / scale,
                          std::abs(mono - lg) / scale, std::abs(dir - lg) / scale});
    }
    report(6, "three-way exponent agreement", worst <= 1e-6,
           "max pairwise relative deviation " + fmt(worst) +
               " over m in {0.1, 0.2, 0.3} (tolerance 1e-6)");
}

// 7. determinant-decay identity of the monodromy matrix
void criterion_7() {
    double worst = 0.0;
    for (double m : {0.2, 0.5}) {
        MathieuParams p{m, 1.0, 1.0, 1.0};
        const MonodromyFactorization f = monodromy_factorized(p);
        worst = std::max(worst,
                         std::abs(std::expm1(f.log_det + 2.0 * kPi * p.gamma / p.m)));
    }
    report(7, "determinant-decay identity", worst <= 1e-8,
           "max |det(M) e^{2 pi gamma / m} - 1| = " + fmt(worst) +
               " at m in {0.2, 0.5} (tolerance 1e-8)");
}

// 8. determinant recurrence vs dense LU over randomized parameters
void criterion_8() {
    std::mt19937 gen(987654321u);
    std::uniform_real_distribution<double> um(0.01, 1.0);
    std::uniform_real_distribution<double> ug(0.5, 2.0);
    std::uniform_real_distribution<double> ue(-1.0, 1.0);
    std::uniform_int_distribution<long> un(1, 50);
    double worst = 0.0;
    for (int draw = 0; draw < 100; draw++) {
        MathieuParams p;
        p.m = um(gen);
        p.gamma = ug(gen);
        p.omega = ug(gen);
        p.epsilon = ue(gen);
        const long n = un(gen);
        const double rec = det_truncated(p, n);
        const double dir = det_truncated_direct(p, n);
        worst = std::max(worst, std::abs(rec - dir) / std::abs(dir));
    }
    report(8, "recurrence vs dense determinant", worst <= 1e-12,
           "max relative deviation " + fmt(worst) +
               " over 100 seeded draws, n <= 50 (tolerance 1e-12)");
}

// 9. series squeeze and the closed form of the bound series
void criterion_9() {
    bool squeeze_ok = true;
    for (double m : {0.01, 0.05, 0.1}) {
        MathieuParams p{m, 1.0, 1.0, 1.0};
        const double s = series_s_bruteforce(p, 100000);
        squeeze_ok = squeeze_ok && series_s_lower_closed(p) < s && s < series_s_closed(p);
    }
    MathieuParams p{0.1, 1.0, 1.0, 1.0};  // a = (gamma/(2 m omega))^2 = 25
    KahanSum acc;
    for (long n = 0; n < 1000000; n++) {
        const double c = c_n(p, n);
        acc.add(c * c);
    }
    const double brute = 2.0 * acc.value();
    const double rel = std::abs(series_s_closed(p) - brute) / brute;
    report(9, "series squeeze and closed bound", squeeze_ok && rel <= 1e-10,
           std::string("squeeze holds at m in {0.01, 0.05, 0.1}: ") +
               (squeeze_ok ? "yes" : "no") + "; closed vs 1e6-term sum rel dev " +
               fmt(rel) + " (tolerance 1e-10)");
}

// 10. zero-drive limits are exact in every module
void criterion_10() {
    std::string fails;
    auto expect = [&fails](bool ok, const char* what) {
        if (!ok) {
            if (!fails.empty()) fails += ", ";
            fails += what;
        }
    };

    MathieuParams p{0.5, 1.0, 0.0, 1.0};
    const FloquetResult fr = floquet(p);
    expect(std::abs(fr.lambda_max) <= 1e-10, "monodromy lambda_max != 0");
    expect(std::abs(fr.lambda_min + p.gamma / p.m) <= 1e-9 * p.gamma / p.m,
           "monodromy lambda_min != -gamma/m");
    const PeriodicPart part = periodic_part(p, fr, Branch::Max, 64);
    const double amp = std::pow(p.gamma * p.gamma / 4.0, -0.25);
    double dev = 0.0;
    for (double v : part.values) dev = std::max(dev, std::abs(v - amp));
    expect(dev <= 1e-10, "periodic part not the constant (gamma^2/4)^(-1/4)");

    expect(c_n(p, 0) == 0.0 && c_n(p, 3) == 0.0, "c_n != 0");
    expect(det_truncated(p, 1) == 1.0 && det_truncated(p, 50) == 1.0,
           "det truncation != 1");
    const Delta0Result d = delta0(p);
    expect(d.delta0 == 1.0, "delta0 != 1");
    const ExponentTriple e = exponent_from_delta(p, d.delta0);
    expect(e.lambda_max == 0.0 && e.lambda_min == -p.gamma / p.m,
           "determinant exponents not exactly (0, -gamma/m)");
    expect(series_s_bruteforce(p, 100) == 0.0 && series_s_closed(p) == 0.0,
           "series not exactly 0");

    const auto [wmax, wmin] = wkb_exponents(p);
    expect(wmax == 0.0 && wmin == -p.gamma / p.m, "wkb exponents not (0, -gamma/m)");
    const double T = p.period();
    expect(phase_integral(p, 1.0, PhaseMethod::Quadrature) ==
                   p.gamma * 1.0 / (2.0 * p.m) &&
               phase_integral(p, 1.0, PhaseMethod::Taylor) ==
                   p.gamma * 1.0 / (2.0 * p.m),
           "phase != gamma t/(2m)");
    const std::vector<double> grid{0.0, 0.25 * T, 0.5 * T, T};
    for (double v : wkb_periodic(p, grid, Branch::Max).values)
        expect(v == amp, "wkb periodic part not the exact constant");
    const ErrorEnvelope env = olver_error_envelope(p, 0.5 * T, T);
    expect(env.f1 == 0.0 && env.f2 == 0.0 && env.eps_bound_1 == 0.0 &&
               env.eps_bound_2 == 0.0 && env.delta_bound == 0.0,
           "error envelope not identically zero");

    report(10, "zero-drive exact limits", fails.empty(),
           fails.empty() ? "all modules reproduce the zero-drive limits exactly"
                         : fails);
}

}  // namespace

int main() {
    try {
        double c1_slope = 0.0;
        criterion_1(c1_slope);
        criterion_2(c1_slope);
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance run aborted: %s\n", e.what());
        return 99;
    }
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
