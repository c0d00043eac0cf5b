#include "mathieu/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mathieu/hill.hpp"
#include "mathieu/monodromy.hpp"
#include "mathieu/study.hpp"
#include "mathieu/wkb.hpp"

namespace mathieu {

namespace {

struct CommonArgs {
    double m = 0.1;
    double gamma = 1.0;
    double epsilon = 1.0;
    double omega = 1.0;
    bool json = false;
    double rel_tol = 1e-12;
    double hill_tol = 1e-12;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_m = true) {
    if (with_m) cmd->add_option("--m", a.m, "mass parameter");
    cmd->add_option("--gamma", a.gamma, "damping coefficient");
    cmd->add_option("--epsilon", a.epsilon, "drive amplitude");
    cmd->add_option("--omega", a.omega, "drive angular frequency");
    cmd->add_flag("--json", a.json, "machine-readable JSON output");
    cmd->add_option("--rel-tol", a.rel_tol, "integrator relative tolerance");
    cmd->add_option("--hill-tol", a.hill_tol, "determinant convergence tolerance");
}

MathieuParams to_params(const CommonArgs& a) {
    MathieuParams p;
    p.m = a.m;
    p.gamma = a.gamma;
    p.epsilon = a.epsilon;
    p.omega = a.omega;
    return p;
}

IntegratorConfig to_integrator(const CommonArgs& a) {
    IntegratorConfig cfg;
    cfg.rel_tol = a.rel_tol;
    return cfg;
}

// Exit code 2 when the physical parameters violate their invariants.
bool reject_invalid(const MathieuParams& p) {
    const Validation v = validate(p);
    if (v.ok) return false;
    for (const auto& viol : v.violations)
        std::cerr << "invalid parameters: " << viol << "\n";
    return true;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_exponents(const CommonArgs& a, const std::string& method) {
    const MathieuParams p = to_params(a);
    if (reject_invalid(p)) return 2;
    const bool want_mono = method == "all" || method == "monodromy";
    const bool want_hill = method == "all" || method == "hill";
    const bool want_wkb = method == "all" || method == "wkb";

    nlohmann::ordered_json j;
    j["params"] = {{"m", p.m}, {"gamma", p.gamma}, {"epsilon", p.epsilon}, {"omega", p.omega}};
    double mono_max = 0.0, hill_max = 0.0;
    bool have_mono = false, have_hill = false;

    if (want_mono) {
        const FloquetResult fr = floquet(p, to_integrator(a));
        mono_max = fr.lambda_max;
        have_mono = true;
        j["monodromy"] = {{"lambda_max", fr.lambda_max},
                          {"lambda_min", fr.lambda_min},
                          {"abel_residual", fr.abel_residual},
                          {"multiplier_max", fr.multipliers[0]},
                          {"multiplier_min", fr.multipliers[1]}};
    }
    if (want_hill) {
        const HillResult hr = hill_analyze(p, a.hill_tol);
        hill_max = hr.lambda_max_hill;
        have_hill = true;
        j["hill"] = {{"lambda_max", hr.lambda_max_hill},
                     {"lambda_min", hr.lambda_min_hill},
                     {"delta0", hr.delta0},
                     {"truncation_n", hr.truncation_n},
                     {"used_log_domain", hr.used_log_domain},
                     {"log_domain_threshold", kHillLogDomainThreshold}};
    }
    if (want_wkb) {
        const auto [lmax, lmin] = wkb_exponents(p);
        j["wkb"] = {{"lambda_max", lmax}, {"lambda_min", lmin}};
        if (have_mono) j["deltas"]["monodromy_wkb"] = std::abs(mono_max - lmax);
        if (have_hill) j["deltas"]["hill_wkb"] = std::abs(hill_max - lmax);
    }
    if (have_mono && have_hill)
        j["deltas"]["monodromy_hill"] = std::abs(mono_max - hill_max);

    if (a.json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("%-10s  %-24s  %-24s\n", "method", "lambda_max", "lambda_min");
    for (const char* name : {"monodromy", "hill", "wkb"}) {
        if (!j.contains(name)) continue;
        std::printf("%-10s  %-24s  %-24s\n", name,
                    num(j[name]["lambda_max"].get<double>()).c_str(),
                    num(j[name]["lambda_min"].get<double>()).c_str());
    }
    if (j.contains("deltas")) {
        std::printf("pairwise |d lambda_max|:");
        for (const auto& [key, val] : j["deltas"].items())
            std::printf(" %s=%s", key.c_str(), num(val.get<double>()).c_str());
        std::printf("\n");
    }
    if (j.contains("hill"))
        std::printf("hill: delta0=%s truncation_n=%ld log_domain=%s (threshold F=%g)\n",
                    num(j["hill"]["delta0"].get<double>()).c_str(),
                    static_cast<long>(j["hill"]["truncation_n"].get<long>()),
                    j["hill"]["used_log_domain"].get<bool>() ? "yes" : "no",
                    kHillLogDomainThreshold);
    if (j.contains("monodromy"))
        std::printf("monodromy: abel_residual=%s\n",
                    num(j["monodromy"]["abel_residual"].get<double>()).c_str());
    return 0;
}

int cmd_hill(const CommonArgs& a) {
    const MathieuParams p = to_params(a);
    if (reject_invalid(p)) return 2;
    const HillResult hr = hill_analyze(p, a.hill_tol);
    const double det_m3 = det_truncated(p, 1);

    nlohmann::ordered_json j;
    j["params"] = {{"m", p.m}, {"gamma", p.gamma}, {"epsilon", p.epsilon}, {"omega", p.omega}};
    j["delta0"] = hr.delta0;
    j["truncation_n"] = hr.truncation_n;
    j["c_exponent"] = hr.c_exponent;
    j["lambda_max"] = hr.lambda_max_hill;
    j["lambda_min"] = hr.lambda_min_hill;
    j["used_log_domain"] = hr.used_log_domain;
    j["log_domain_threshold"] = kHillLogDomainThreshold;
    j["det_m3"] = det_m3;
    if (p.epsilon != 0.0) {
        j["series_s_upper"] = series_s_closed(p);
        j["series_s_lower"] = series_s_lower_closed(p);
    }
    if (a.json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("delta0        = %s (truncation_n=%ld)\n", num(hr.delta0).c_str(),
                hr.truncation_n);
    std::printf("c_exponent    = %s\n", num(hr.c_exponent).c_str());
    std::printf("lambda_max    = %s\n", num(hr.lambda_max_hill).c_str());
    std::printf("lambda_min    = %s\n", num(hr.lambda_min_hill).c_str());
    std::printf("path          = %s (switch at pi*gamma/(omega*m) > %g)\n",
                hr.used_log_domain ? "log-domain" : "direct cosh", kHillLogDomainThreshold);
    std::printf("det(M_3)      = %s\n", num(det_m3).c_str());
    return 0;
}

int cmd_wkb(const CommonArgs& a) {
    const MathieuParams p = to_params(a);
    if (reject_invalid(p)) return 2;
    const double T = p.period();
    const auto [lmax, lmin] = wkb_exponents(p);
    const double phase_q = phase_integral(p, T, PhaseMethod::Quadrature);
    const double phase_t = phase_integral(p, T, PhaseMethod::Taylor);
    const ErrorEnvelope env = olver_error_envelope(p, T, T);
    const OlverBoundVariants var = olver_bound_variants(p, T, T);

    nlohmann::ordered_json j;
    j["params"] = {{"m", p.m}, {"gamma", p.gamma}, {"epsilon", p.epsilon}, {"omega", p.omega}};
    j["lambda_max_pred"] = lmax;
    j["lambda_min_pred"] = lmin;
    j["phase_integral_T"] = {{"quadrature", phase_q}, {"taylor", phase_t}};
    j["envelope_T"] = {{"f1", env.f1},
                       {"f2", env.f2},
                       {"eps_bound_1", env.eps_bound_1},
                       {"eps_bound_2", env.eps_bound_2},
                       {"eps_bound_1_as_printed", var.as_printed_1},
                       {"eps_bound_2_as_printed", var.as_printed_2},
                       {"delta_bound", env.delta_bound}};
    if (a.json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("lambda_max_pred = %s\n", num(lmax).c_str());
    std::printf("lambda_min_pred = %s\n", num(lmin).c_str());
    std::printf("phase integral over one period: quadrature=%s taylor=%s\n",
                num(phase_q).c_str(), num(phase_t).c_str());
    std::printf("variation integrals at t=T: f1=%s f2=%s\n", num(env.f1).c_str(),
                num(env.f2).c_str());
    std::printf("eps bounds (exp(m*f)-1): %s / %s; as-printed (m*exp(f)/2-1): %s / %s\n",
                num(env.eps_bound_1).c_str(), num(env.eps_bound_2).c_str(),
                num(var.as_printed_1).c_str(), num(var.as_printed_2).c_str());
    std::printf("delta_bound(T)  = %s\n", num(env.delta_bound).c_str());
    return 0;
}

int cmd_periodic(const CommonArgs& a, const std::string& branch_name, int grid_len) {
    const MathieuParams p = to_params(a);
    if (reject_invalid(p)) return 2;
    const Branch branch = branch_name == "min" ? Branch::Min : Branch::Max;
    const FloquetResult fr = floquet(p, to_integrator(a));
    const PeriodicPart part = periodic_part(p, fr, branch, grid_len, to_integrator(a));

    nlohmann::ordered_json j;
    j["params"] = {{"m", p.m}, {"gamma", p.gamma}, {"epsilon", p.epsilon}, {"omega", p.omega}};
    j["branch"] = branch_name;
    j["normalization"] = part.normalization;
    j["periodicity_residual"] = part.periodicity_residual;
    j["grid"] = part.grid;
    j["values"] = part.values;

    double sup_diff = -1.0;
    if (p.wkb_valid()) {
        const PeriodicPart pred = wkb_periodic(p, part.grid, branch);
        sup_diff = 0.0;
        for (std::size_t i = 0; i < part.values.size(); i++)
            sup_diff = std::max(sup_diff, std::abs(part.values[i] - pred.values[i]));
        j["wkb_values"] = pred.values;
        j["sup_diff_vs_wkb"] = sup_diff;
    }
    if (a.json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("branch=%s grid_len=%d normalization=%s periodicity_residual=%s\n",
                branch_name.c_str(), grid_len, num(part.normalization).c_str(),
                num(part.periodicity_residual).c_str());
    if (sup_diff >= 0.0)
        std::printf("sup |P_num - P_wkb| = %s\n", num(sup_diff).c_str());
    else
        std::printf("WKB reference unavailable (gamma^2/4 <= m*|eps|)\n");
    const std::size_t stride = part.grid.size() > 8 ? part.grid.size() / 8 : 1;
    std::printf("%-22s  %-24s\n", "t", "P(t)");
    for (std::size_t i = 0; i < part.grid.size(); i += stride)
        std::printf("%-22s  %-24s\n", num(part.grid[i]).c_str(),
                    num(part.values[i]).c_str());
    return 0;
}

int cmd_sweep(const CommonArgs& a, const std::string& quantity_str, double m_min,
              double m_max, int points, const std::string& out_path,
              const std::string& format, int grid_len) {
    const auto q = parse_quantity(quantity_str);
    if (!q) {
        std::cerr << "unknown quantity: " << quantity_str << "\n";
        return 2;
    }
    MathieuParams base = to_params(a);
    base.m = m_min;  // placeholder; per-point m overrides
    if (reject_invalid(base)) return 2;

    SweepConfig cfg;
    cfg.base = base;
    cfg.m_values = default_m_grid(m_min, m_max, points);
    cfg.quantity = *q;
    cfg.integrator = to_integrator(a);
    cfg.hill_tol = a.hill_tol;
    cfg.out_format = format == "json" ? OutFormat::Json : OutFormat::Csv;
    cfg.grid_len = grid_len;

    const ConvergenceReport report = sweep(cfg);
    const std::string payload =
        cfg.out_format == OutFormat::Json ? to_json(report, cfg) : to_csv(report, cfg);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 1;
        }
        f << payload;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Floquet analysis of the damped Mathieu equation "
                 "(monodromy integration, infinite determinant, WKB)"};
    app.require_subcommand(1);

    CommonArgs ex_args, hill_args, wkb_args, per_args, sweep_args;
    std::string method = "all";
    std::string branch = "max";
    int grid_len = 256;
    std::string quantity;
    double m_min = 0.005, m_max = 0.32;
    int points = 16;
    std::string out_path, format = "csv";
    int sweep_grid = 256;

    CLI::App* ex = app.add_subcommand("exponents", "characteristic exponents by all methods");
    add_common(ex, ex_args);
    ex->add_option("--method", method, "monodromy|hill|wkb|all")
        ->check(CLI::IsMember({"monodromy", "hill", "wkb", "all"}));

    CLI::App* hl = app.add_subcommand("hill", "determinant limit and exponents");
    add_common(hl, hill_args);

    CLI::App* wk = app.add_subcommand("wkb", "WKB predictions and error envelopes");
    add_common(wk, wkb_args);

    CLI::App* pe = app.add_subcommand("periodic", "periodic part vs WKB prediction");
    add_common(pe, per_args);
    pe->add_option("--branch", branch, "max|min")->check(CLI::IsMember({"max", "min"}));
    pe->add_option("--grid", grid_len, "samples per period")->check(CLI::PositiveNumber);

    CLI::App* sw = app.add_subcommand("sweep", "convergence study over m");
    add_common(sw, sweep_args, /*with_m=*/false);
    sw->add_option("--quantity", quantity, "quantity to sweep")
        ->required()
        ->check(CLI::IsMember({"exponent-max", "exponent-min", "delta0", "periodic-max",
                               "periodic-min", "truncated-det"}));
    sw->add_option("--m-min", m_min, "smallest m")->check(CLI::PositiveNumber);
    sw->add_option("--m-max", m_max, "largest m")->check(CLI::PositiveNumber);
    sw->add_option("--points", points, "grid size")->check(CLI::PositiveNumber);
    sw->add_option("--out", out_path, "output path (default: stdout)");
    sw->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--grid", sweep_grid, "periodic comparison grid")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (ex->parsed()) return cmd_exponents(ex_args, method);
        if (hl->parsed()) return cmd_hill(hill_args);
        if (wk->parsed()) return cmd_wkb(wkb_args);
        if (pe->parsed()) return cmd_periodic(per_args, branch, grid_len);
        if (sw->parsed())
            return cmd_sweep(sweep_args, quantity, m_min, m_max, points, out_path, format,
                             sweep_grid);
    } catch (const InvalidParams& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const MathieuError& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace mathieu
