#pragma once

// Convergence-study harness: sweeps m over a grid, measures the deviation of
// each method from its small-m prediction, fits a log-log slope, and emits
// deterministic CSV/JSON reports.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mathieu/dop853.hpp"
#include "mathieu/params.hpp"
#include "mathieu/types.hpp"

namespace mathieu {

enum class Quantity {
    ExponentMax,    // |lambda_max(monodromy) - (-m eps^2 / 2 gamma^3)|
    ExponentMin,    // reduces exactly to the ExponentMax error (see sweep())
    Delta0Deficit,  // |(1 - delta0) - m pi eps^2 / (gamma^3 omega)|
    PeriodicMax,    // sup-grid |P_num - P_wkb|, max branch
    PeriodicMin,    // same, min branch
    TruncatedDet,   // |1 - det(M_3)|
};

const char* quantity_name(Quantity q);                       // exponent_max, ...
std::optional<Quantity> parse_quantity(const std::string&);  // exponent-max, ...

enum class OutFormat { Csv, Json };

struct SweepConfig {
    MathieuParams base;             // m is replaced per point
    std::vector<double> m_values;   // strictly positive, descending
    Quantity quantity = Quantity::ExponentMax;
    IntegratorConfig integrator;
    double hill_tol = 1e-12;
    OutFormat out_format = OutFormat::Csv;
    int grid_len = 256;             // periodic-part comparison grid
};

// Log-spaced descending grid (default 16 points spanning [0.005, 0.32]).
std::vector<double> default_m_grid(double m_min = 0.005, double m_max = 0.32,
                                   int points = 16);

struct SweepRecord {
    double m = 0.0;
    double error = 0.0;
    std::string flag;           // empty = ok; otherwise reason the point failed
    std::string method_detail;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
    int points_excluded = 0;
};

// OLS on (ln m, ln error); records with error <= 0 (or non-finite) are
// excluded and counted. Throws InsufficientPoints below 3 usable records.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& records);

struct ConvergenceReport {
    Quantity quantity = Quantity::ExponentMax;
    std::vector<SweepRecord> records;  // ascending m, one per requested m
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
    int points_excluded = 0;
    std::string metadata;  // notes (e.g. the exponent-sum reduction)
};

// One record per m value; points that fail (stiffness guard, no convergence,
// WKB regime violated for periodic quantities) are flagged, not dropped.
// Throws AllPointsFailed when no point succeeds.
ConvergenceReport sweep(const SweepConfig& config);

// Deterministic serializations (%.17g for reals; '#' footer with fit and
// config echo in the CSV).
std::string to_csv(const ConvergenceReport& report, const SweepConfig& config);
std::string to_json(const ConvergenceReport& report, const SweepConfig& config);

} // namespace mathieu
