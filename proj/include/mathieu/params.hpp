#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mathieu/errors.hpp"

namespace mathieu {

// Parameters of  m x'' + gamma x' - x eps cos(omega t) = 0.
struct MathieuParams {
    double m = 0.1;
    double gamma = 1.0;
    double epsilon = 1.0;
    double omega = 1.0;

    double period() const { return 2.0 * std::numbers::pi / omega; }

    // f(t) = gamma^2/4 + m*eps*cos(omega t), the WKB frequency-squared after
    // the Liouville transform.
    double f(double t) const {
        return gamma * gamma / 4.0 + m * epsilon * std::cos(omega * t);
    }

    // No turning points: f(t) > 0 for all t.
    bool wkb_valid() const {
        return gamma * gamma / 4.0 > m * std::abs(epsilon);
    }
};

struct Validation {
    bool ok = true;            // hard invariants: m > 0, gamma > 0, omega > 0, all finite
    bool wkb_valid = true;     // reported predicate, not a hard invariant
    std::vector<std::string> violations;
};

inline Validation validate(const MathieuParams& p) {
    Validation v;
    auto fail = [&](const std::string& what) {
        v.ok = false;
        v.violations.push_back(what);
    };
    if (!(p.m > 0.0)) fail("m > 0");
    if (!(p.gamma > 0.0)) fail("gamma > 0");
    if (!(p.omega > 0.0)) fail("omega > 0");
    if (!std::isfinite(p.m) || !std::isfinite(p.gamma) ||
        !std::isfinite(p.epsilon) || !std::isfinite(p.omega))
        fail("all parameters finite");
    v.wkb_valid = v.ok && p.wkb_valid();
    return v;
}

inline void require_valid(const MathieuParams& p) {
    Validation v = validate(p);
    if (!v.ok) {
        std::string msg = "invalid parameters:";
        for (const auto& s : v.violations) msg += " [" + s + "]";
        throw InvalidParams(msg);
    }
}

inline void require_wkb_valid(const MathieuParams& p) {
    require_valid(p);
    if (!p.wkb_valid())
        throw TurningPoint("gamma^2/4 <= m*|epsilon|: f(t) has a zero, WKB form invalid");
}

} // namespace mathieu
