#include "mathieu/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "mathieu/hill.hpp"
#include "mathieu/monodromy.hpp"
#include "mathieu/wkb.hpp"

namespace mathieu {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n') c = ';';
    }
    return s;
}

double predicted_lambda_max(const MathieuParams& p) {
    return -p.m * p.epsilon * p.epsilon / (2.0 * p.gamma * p.gamma * p.gamma);
}

SweepRecord evaluate_point(const SweepConfig& cfg, double m) {
    MathieuParams p = cfg.base;
    p.m = m;
    SweepRecord rec;
    rec.m = m;

    const bool periodic_quantity =
        cfg.quantity == Quantity::PeriodicMax || cfg.quantity == Quantity::PeriodicMin;
    if (periodic_quantity && !p.wkb_valid()) {
        rec.flag = "wkb_invalid";
        rec.method_detail = "skipped: gamma^2/4 <= m*|eps|, no WKB reference";
        return rec;
    }

    try {
        switch (cfg.quantity) {
        case Quantity::ExponentMax: {
            const FloquetResult fr = floquet(p, cfg.integrator);
            rec.error = std::abs(fr.lambda_max - predicted_lambda_max(p));
            rec.method_detail = "monodromy lambda_max vs -m*eps^2/(2*gamma^3)";
            break;
        }
        case Quantity::ExponentMin: {
            // lambda_min = -gamma/m - lambda_max exactly, so comparing it to
            // -gamma/m - lambda_max_pred measures the same deviation as the
            // ExponentMax error.
            const FloquetResult fr = floquet(p, cfg.integrator);
            const double reference = -p.gamma / p.m - predicted_lambda_max(p);
            rec.error = std::abs(fr.lambda_min - reference);
            rec.method_detail =
                "abel lambda_min vs -gamma/m - lambda_max_pred (== lambda_max error)";
            break;
        }
        case Quantity::Delta0Deficit: {
            const Delta0Result d = delta0(p, cfg.hill_tol);
            const double pred = m * kPi * p.epsilon * p.epsilon /
                                (p.gamma * p.gamma * p.gamma * p.omega);
            rec.error = std::abs((1.0 - d.delta0) - pred);
            rec.method_detail =
                "|(1-delta0) - m*pi*eps^2/(gamma^3*omega)|, n=" +
                std::to_string(d.truncation_n);
            break;
        }
        case Quantity::TruncatedDet: {
            rec.error = std::abs(1.0 - det_truncated(p, 1));
            rec.method_detail = "|1 - det(M_3)|";
            break;
        }
        case Quantity::PeriodicMax:
        case Quantity::PeriodicMin: {
            const Branch branch =
                cfg.quantity == Quantity::PeriodicMax ? Branch::Max : Branch::Min;
            const FloquetResult fr = floquet(p, cfg.integrator);
            const PeriodicPart num =
                periodic_part(p, fr, branch, cfg.grid_len, cfg.integrator);
            const PeriodicPart pred = wkb_periodic(p, num.grid, branch);
            double sup = 0.0;
            for (std::size_t i = 0; i < num.values.size(); i++)
                sup = std::max(sup, std::abs(num.values[i] - pred.values[i]));
            rec.error = sup;
            rec.method_detail = "sup |P_num - P_wkb| on " +
                                std::to_string(cfg.grid_len) + "-point grid";
            break;
        }
        }
    } catch (const MathieuError& e) {
        rec.flag = sanitize(e.what());
        rec.error = 0.0;
    }
    return rec;
}

} // namespace

const char* quantity_name(Quantity q) {
    switch (q) {
    case Quantity::ExponentMax: return "exponent_max";
    case Quantity::ExponentMin: return "exponent_min";
    case Quantity::Delta0Deficit: return "delta0_deficit";
    case Quantity::PeriodicMax: return "periodic_max";
    case Quantity::PeriodicMin: return "periodic_min";
    case Quantity::TruncatedDet: return "truncated_det";
    }
    return "unknown";
}

std::optional<Quantity> parse_quantity(const std::string& s) {
    if (s == "exponent-max") return Quantity::ExponentMax;
    if (s == "exponent-min") return Quantity::ExponentMin;
    if (s == "delta0") return Quantity::Delta0Deficit;
    if (s == "periodic-max") return Quantity::PeriodicMax;
    if (s == "periodic-min") return Quantity::PeriodicMin;
    if (s == "truncated-det") return Quantity::TruncatedDet;
    return std::nullopt;
}

std::vector<double> default_m_grid(double m_min, double m_max, int points) {
    if (!(m_min > 0.0) || !(m_max > m_min) || points < 2)
        throw InvalidParams("default_m_grid: need 0 < m_min < m_max and points >= 2");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double lmin = std::log(m_min), lmax = std::log(m_max);
    for (int k = 0; k < points; k++) {
        const double f = static_cast<double>(k) / (points - 1);
        grid[static_cast<std::size_t>(k)] = std::exp(lmax + f * (lmin - lmax));
    }
    grid.front() = m_max;
    grid.back() = m_min;
    return grid;  // descending
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& records) {
    std::vector<std::pair<double, double>> pts;
    int excluded = 0;
    for (const auto& [m, err] : records) {
        if (err > 0.0 && std::isfinite(err) && m > 0.0)
            pts.emplace_back(std::log(m), std::log(err));
        else
            excluded++;
    }
    if (pts.size() < 3)
        throw InsufficientPoints("fit_loglog: fewer than 3 usable records");

    const double n = static_cast<double>(pts.size());
    double xbar = 0.0, ybar = 0.0;
    for (const auto& [x, y] : pts) {
        xbar += x;
        ybar += y;
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
        syy += (y - ybar) * (y - ybar);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points_used = static_cast<int>(pts.size());
    fit.points_excluded = excluded;
    return fit;
}

ConvergenceReport sweep(const SweepConfig& config) {
    if (config.m_values.empty()) throw InvalidParams("sweep: empty m grid");
    ConvergenceReport report;
    report.quantity = config.quantity;
    report.records.reserve(config.m_values.size());
    for (double m : config.m_values)
        report.records.push_back(evaluate_point(config, m));
    std::sort(report.records.begin(), report.records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.m < b.m; });

    bool any_ok = false;
    std::vector<std::pair<double, double>> fit_input;
    for (const auto& r : report.records) {
        if (r.flag.empty()) {
            any_ok = true;
            fit_input.emplace_back(r.m, r.error);
        }
    }
    if (!any_ok) throw AllPointsFailed("sweep: every grid point failed");

    const FitResult fit = fit_loglog(fit_input);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.r_squared = fit.r_squared;
    report.points_used = fit.points_used;
    report.points_excluded =
        static_cast<int>(report.records.size()) - fit.points_used;

    if (config.quantity == Quantity::ExponentMin)
        report.metadata =
            "lambda_min = -gamma/m - lambda_max exactly (exponent-sum identity); "
            "its deviation from -gamma/m - lambda_max_pred reduces to the "
            "exponent_max error, so this sweep reproduces the exponent_max slope";
    return report;
}

std::string to_csv(const ConvergenceReport& report, const SweepConfig& config) {
    std::string out = "m,error,flag,method_detail\n";
    for (const auto& r : report.records) {
        out += fmt17(r.m);
        out += ',';
        out += fmt17(r.error);
        out += ',';
        out += sanitize(r.flag);
        out += ',';
        out += sanitize(r.method_detail);
        out += '\n';
    }
    out += "# quantity=";
    out += quantity_name(report.quantity);
    out += '\n';
    out += "# slope=" + fmt17(report.slope) + " intercept=" + fmt17(report.intercept) +
           " r_squared=" + fmt17(report.r_squared) + '\n';
    out += "# points_used=" + std::to_string(report.points_used) +
           " points_excluded=" + std::to_string(report.points_excluded) + '\n';
    out += "# gamma=" + fmt17(config.base.gamma) + " epsilon=" + fmt17(config.base.epsilon) +
           " omega=" + fmt17(config.base.omega) + '\n';
    out += "# m_count=" + std::to_string(config.m_values.size());
    if (!config.m_values.empty()) {
        auto [lo, hi] =
            std::minmax_element(config.m_values.begin(), config.m_values.end());
        out += " m_min=" + fmt17(*lo) + " m_max=" + fmt17(*hi);
    }
    out += '\n';
    out += "# rel_tol=" + fmt17(config.integrator.rel_tol) +
           " abs_tol=" + fmt17(config.integrator.abs_tol) +
           " hill_tol=" + fmt17(config.hill_tol) +
           " grid_len=" + std::to_string(config.grid_len) + '\n';
    if (!report.metadata.empty()) out += "# note=" + sanitize(report.metadata) + '\n';
    return out;
}

std::string to_json(const ConvergenceReport& report, const SweepConfig& config) {
    nlohmann::ordered_json j;
    j["config"]["quantity"] = quantity_name(report.quantity);
    j["config"]["gamma"] = config.base.gamma;
    j["config"]["epsilon"] = config.base.epsilon;
    j["config"]["omega"] = config.base.omega;
    j["config"]["m_values"] = config.m_values;
    j["config"]["rel_tol"] = config.integrator.rel_tol;
    j["config"]["abs_tol"] = config.integrator.abs_tol;
    j["config"]["hill_tol"] = config.hill_tol;
    j["config"]["grid_len"] = config.grid_len;
    if (!report.metadata.empty()) j["config"]["note"] = report.metadata;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        nlohmann::ordered_json jr;
        jr["m"] = r.m;
        jr["error"] = r.error;
        jr["flag"] = r.flag;
        j["records"].push_back(jr);
    }
    j["fit"]["slope"] = report.slope;
    j["fit"]["intercept"] = report.intercept;
    j["fit"]["r_squared"] = report.r_squared;
    return j.dump(2) + "\n";
}

} // namespace mathieu
