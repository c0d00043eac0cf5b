#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "mathieu/study.hpp"

using namespace mathieu;

namespace {

std::vector<std::pair<double, double>> power_law(double coeff, double p) {
    std::vector<std::pair<double, double>> pts;
    for (double m : {0.32, 0.16, 0.08, 0.04, 0.02, 0.01})
        pts.emplace_back(m, coeff * std::pow(m, p));
    return pts;
}

}  // namespace

TEST_CASE("log-log fit recovers synthetic power laws exactly") {
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        CAPTURE(p);
        const FitResult fit = fit_loglog(power_law(1.0, p));
        CHECK(fit.slope == doctest::Approx(p).epsilon(1e-10));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.points_used == 6);
        CHECK(fit.points_excluded == 0);
    }
    const FitResult fit = fit_loglog(power_law(3.0, 1.0));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("log-log fit needs three usable points") {
    CHECK_THROWS_AS(fit_loglog({{0.1, 1e-3}, {0.05, 2.5e-4}}), InsufficientPoints);
    // zero errors are excluded, which can starve the fit
    CHECK_THROWS_AS(fit_loglog({{0.1, 0.0}, {0.05, 0.0}, {0.02, 0.0}, {0.01, 1e-5}}),
                    InsufficientPoints);
}

TEST_CASE("log-log fit excludes non-positive and non-finite errors") {
    std::vector<std::pair<double, double>> pts = power_law(1.0, 2.0);
    pts.emplace_back(0.005, 0.0);
    pts.emplace_back(0.002, -1e-9);
    pts.emplace_back(0.001, std::nan(""));
    const FitResult fit = fit_loglog(pts);
    CHECK(fit.points_used == 6);
    CHECK(fit.points_excluded == 3);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("default mass grid is log-spaced, descending, with exact endpoints") {
    const std::vector<double> g = default_m_grid();
    REQUIRE(g.size() == 16);
    CHECK(g.front() == 0.32);
    CHECK(g.back() == 0.005);
    const double expected_ratio = g[1] / g[0];
    for (std::size_t i = 0; i + 1 < g.size(); i++) {
        CHECK(g[i + 1] < g[i]);
        CHECK(g[i + 1] / g[i] == doctest::Approx(expected_ratio).epsilon(1e-12));
    }
    CHECK_THROWS_AS(default_m_grid(0.0, 0.32, 16), InvalidParams);
    CHECK_THROWS_AS(default_m_grid(0.32, 0.005, 16), InvalidParams);
    CHECK_THROWS_AS(default_m_grid(0.005, 0.32, 1), InvalidParams);
}

TEST_CASE("quantity names and CLI tokens round-trip") {
    CHECK(std::string(quantity_name(Quantity::ExponentMax)) == "exponent_max");
    CHECK(std::string(quantity_name(Quantity::Delta0Deficit)) == "delta0_deficit");
    CHECK(parse_quantity("exponent-max") == Quantity::ExponentMax);
    CHECK(parse_quantity("exponent-min") == Quantity::ExponentMin);
    CHECK(parse_quantity("delta0") == Quantity::Delta0Deficit);
    CHECK(parse_quantity("periodic-max") == Quantity::PeriodicMax);
    CHECK(parse_quantity("periodic-min") == Quantity::PeriodicMin);
    CHECK(parse_quantity("truncated-det") == Quantity::TruncatedDet);
    CHECK_FALSE(parse_quantity("exponent_max").has_value());
    CHECK_FALSE(parse_quantity("").has_value());
}

TEST_CASE("truncated-determinant sweep measures a quadratic rate") {
    SweepConfig cfg;
    cfg.quantity = Quantity::TruncatedDet;
    cfg.m_values = default_m_grid();
    const ConvergenceReport rep = sweep(cfg);
    REQUIRE(rep.records.size() == 16);
    CHECK(rep.points_used == 16);
    CHECK(rep.points_excluded == 0);
    CHECK(rep.slope > 1.9);
    CHECK(rep.slope < 2.1);
    CHECK(rep.r_squared > 0.99);
    // records come back ascending, one per requested m
    for (std::size_t i = 0; i + 1 < rep.records.size(); i++)
        CHECK(rep.records[i].m < rep.records[i + 1].m);
    for (const auto& r : rep.records) {
        CHECK(r.flag.empty());
        CHECK(r.error > 0.0);
        CHECK(r.method_detail.find("det(M_3)") != std::string::npos);
    }
}

TEST_CASE("exponent-min sweep reduces to the exponent-max error") {
    SweepConfig cfg;
    cfg.m_values = {0.1, 0.07, 0.05, 0.035};
    cfg.quantity = Quantity::ExponentMax;
    const ConvergenceReport max_rep = sweep(cfg);
    CHECK(max_rep.metadata.empty());

    cfg.quantity = Quantity::ExponentMin;
    const ConvergenceReport min_rep = sweep(cfg);
    CHECK_FALSE(min_rep.metadata.empty());
    CHECK(min_rep.metadata.find("exponent_max") != std::string::npos);
    CHECK(min_rep.slope == doctest::Approx(max_rep.slope).epsilon(1e-9));
    for (std::size_t i = 0; i < min_rep.records.size(); i++) {
        const double a = min_rep.records[i].error;
        const double b = max_rep.records[i].error;
        CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b));
    }
}

TEST_CASE("points outside the WKB regime are flagged, not dropped") {
    SweepConfig cfg;
    cfg.quantity = Quantity::PeriodicMax;
    cfg.m_values = {0.32, 0.16, 0.08, 0.04};  // 0.32 violates gamma^2/4 > m|eps|
    cfg.grid_len = 64;
    const ConvergenceReport rep = sweep(cfg);
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.points_used == 3);
    CHECK(rep.points_excluded == 1);
    const SweepRecord& flagged = rep.records.back();  // ascending: 0.32 last
    CHECK(flagged.m == 0.32);
    CHECK(flagged.flag == "wkb_invalid");
    CHECK(flagged.error == 0.0);
    for (std::size_t i = 0; i + 1 < rep.records.size(); i++) {
        CHECK(rep.records[i].flag.empty());
        CHECK(rep.records[i].error > 0.0);
    }
}

TEST_CASE("a guarded integration is flagged with the thrown reason") {
    SweepConfig cfg;
    cfg.quantity = Quantity::ExponentMax;
    cfg.m_values = {0.1, 0.07, 0.05, 5e-6};  // last point trips the stiffness guard
    const ConvergenceReport rep = sweep(cfg);
    REQUIRE(rep.records.size() == 4);
    CHECK(rep.points_used == 3);
    CHECK(rep.points_excluded == 1);
    const SweepRecord& flagged = rep.records.front();  // ascending: 5e-6 first
    CHECK(flagged.flag.find("stiffness guard") != std::string::npos);
    CHECK(flagged.flag.find(',') == std::string::npos);  // sanitized for CSV
}

TEST_CASE("sweeps where every point fails throw instead of fitting nothing") {
    SweepConfig cfg;
    cfg.quantity = Quantity::PeriodicMax;
    cfg.m_values = {0.35, 0.3};  // both outside the WKB regime
    CHECK_THROWS_AS(sweep(cfg), AllPointsFailed);
    cfg.m_values = {};
    CHECK_THROWS_AS(sweep(cfg), InvalidParams);
}

TEST_CASE("CSV serialization is deterministic and self-describing") {
    SweepConfig cfg;
    cfg.quantity = Quantity::TruncatedDet;
    cfg.m_values = default_m_grid(0.01, 0.32, 8);
    const std::string csv_a = to_csv(sweep(cfg), cfg);
    const std::string csv_b = to_csv(sweep(cfg), cfg);
    CHECK(csv_a == csv_b);

    CHECK(csv_a.rfind("m,error,flag,method_detail\n", 0) == 0);
    CHECK(csv_a.find("# quantity=truncated_det\n") != std::string::npos);
    CHECK(csv_a.find("# slope=") != std::string::npos);
    CHECK(csv_a.find("# points_used=8 points_excluded=0\n") != std::string::npos);
    CHECK(csv_a.find("# gamma=1 epsilon=1 omega=1\n") != std::string::npos);
    CHECK(csv_a.find("# m_count=8 m_min=0.01 m_max=0.32") != std::string::npos);
    CHECK(csv_a.find("# rel_tol=") != std::string::npos);

    // one data row per grid point between the header and the footer
    int data_rows = 0;
    for (std::size_t pos = csv_a.find('\n') + 1; pos < csv_a.size();) {
        if (csv_a[pos] == '#') break;
        data_rows++;
        pos = csv_a.find('\n', pos) + 1;
    }
    CHECK(data_rows == 8);
}

TEST_CASE("JSON serialization parses back with the same fit and records") {
    SweepConfig cfg;
    cfg.quantity = Quantity::ExponentMin;
    cfg.m_values = {0.1, 0.07, 0.05};
    cfg.out_format = OutFormat::Json;
    const ConvergenceReport rep = sweep(cfg);
    const nlohmann::json j = nlohmann::json::parse(to_json(rep, cfg));
    CHECK(j["config"]["quantity"] == "exponent_min");
    CHECK(j["config"]["gamma"] == 1.0);
    CHECK(j["config"]["m_values"].size() == 3);
    CHECK(j["config"]["note"].get<std::string>().find("exponent_max") !=
          std::string::npos);
    REQUIRE(j["records"].size() == 3);
    CHECK(j["records"][0]["m"].get<double>() == rep.records[0].m);
    CHECK(j["records"][0]["error"].get<double>() == rep.records[0].error);
    CHECK(j["records"][0]["flag"].get<std::string>().empty());
    CHECK(j["fit"]["slope"].get<double>() == rep.slope);
    CHECK(j["fit"]["r_squared"].get<double>() == rep.r_squared);
}
