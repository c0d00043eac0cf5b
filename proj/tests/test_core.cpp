#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mathieu/numerics.hpp"
#include "mathieu/params.hpp"

using namespace mathieu;

TEST_CASE("validate accepts the reference parameter set") {
    MathieuParams p{0.1, 1.0, 1.0, 1.0};
    Validation v = validate(p);
    CHECK(v.ok);
    CHECK(v.wkb_valid);  // 0.25 > 0.1
    CHECK(v.violations.empty());
}

TEST_CASE("validate reports the WKB predicate separately from hard invariants") {
    MathieuParams p{1.0, 1.0, 1.0, 1.0};
    Validation v = validate(p);
    CHECK(v.ok);  // m, gamma, omega all positive
    CHECK_FALSE(v.wkb_valid);  // 0.25 < 1
}

TEST_CASE("validate names the violated predicate") {
    MathieuParams p{-0.1, 1.0, 1.0, 1.0};
    Validation v = validate(p);
    CHECK_FALSE(v.ok);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0] == "m > 0");
    CHECK_THROWS_AS(require_valid(p), InvalidParams);
}

TEST_CASE("validate is total on non-finite input") {
    MathieuParams p{0.1, 1.0, std::nan(""), 1.0};
    Validation v = validate(p);
    CHECK_FALSE(v.ok);
}

TEST_CASE("wkb_valid boundary is strict") {
    MathieuParams p{0.25, 1.0, 1.0, 1.0};  // gamma^2/4 == m*|eps|
    CHECK_FALSE(p.wkb_valid());
    p.m = 0.2499999;
    CHECK(p.wkb_valid());
    p.epsilon = -1.0;  // |eps| is what matters
    CHECK(p.wkb_valid());
    p.m = 0.3;
    CHECK_FALSE(p.wkb_valid());
}

TEST_CASE("period and f") {
    MathieuParams p{0.1, 1.0, 1.0, 2.0};
    CHECK(p.period() == doctest::Approx(3.14159265358979324).epsilon(1e-15));
    CHECK(p.f(0.0) == doctest::Approx(0.25 + 0.1).epsilon(1e-15));
    // cos(omega t) = -1 at t = pi/omega
    CHECK(p.f(0.5 * p.period()) == doctest::Approx(0.25 - 0.1).epsilon(1e-14));
}

TEST_CASE("require_wkb_valid throws TurningPoint in the invalid regime") {
    MathieuParams p{1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(require_wkb_valid(p), TurningPoint);
}

TEST_CASE("Kahan accumulation keeps small addends against a large sum") {
    KahanSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; i++) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == doctest::Approx(1000.0).epsilon(1e-12));

    double naive = 1e16;
    for (int i = 0; i < 1000; i++) naive += 1.0;
    naive -= 1e16;
    CHECK(naive != 1000.0);  // plain summation demonstrably loses the signal
}

TEST_CASE("det2x2_exact survives catastrophic cancellation") {
    // det [[x, x-1], [x+1, x]] = 1 exactly; the plain expression returns 0
    // because both products round to 1e16.
    const double x = 1e8;
    CHECK(x * x - (x - 1.0) * (x + 1.0) == 0.0);
    CHECK(det2x2_exact(x, x - 1.0, x + 1.0, x) == 1.0);
}

TEST_CASE("det2x2_exact matches the plain product in benign cases") {
    CHECK(det2x2_exact(2.0, 3.0, 4.0, 5.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(det2x2_exact(1.0, 0.0, 0.0, 1.0) == 1.0);
}

TEST_CASE("error types derive from the library base error") {
    CHECK_THROWS_AS(throw StepUnderflow("x"), MathieuError);
    CHECK_THROWS_AS(throw NoConvergence("x"), MathieuError);
    CHECK_THROWS_AS(throw TurningPoint("x"), MathieuError);
    CHECK_THROWS_AS(throw AllPointsFailed("x"), MathieuError);
}
