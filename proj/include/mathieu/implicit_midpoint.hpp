#pragma once

// Fixed-step implicit midpoint rule for linear systems y' = A(t) y. A-stable,
// so it remains usable in the heavily damped regime where the explicit
// integrator's stability limit would force absurdly small steps. Used only
// when IntegratorConfig::stiff_mode is set.

#include <Eigen/Dense>

#include "mathieu/dop853.hpp"

namespace mathieu {

// One midpoint step: y+ = (I - h/2 A)^{-1} (I + h/2 A) y, A = A(t + h/2).
template <class State, class AFn>
State implicit_midpoint_step(AFn&& A, double t, double h, const State& y) {
    Eigen::Matrix2d Am = A(t + 0.5 * h);
    Eigen::Matrix2d lhs = Eigen::Matrix2d::Identity() - (0.5 * h) * Am;
    Eigen::Matrix2d rhs = Eigen::Matrix2d::Identity() + (0.5 * h) * Am;
    double det = lhs(0, 0) * lhs(1, 1) - lhs(0, 1) * lhs(1, 0);
    Eigen::Matrix2d inv;
    inv << lhs(1, 1), -lhs(0, 1), -lhs(1, 0), lhs(0, 0);
    inv /= det;
    return inv * (rhs * y);
}

template <class State, class AFn>
Trajectory<State> integrate_implicit_midpoint(AFn&& A, double t0, double t1,
                                              const State& y0, long nsteps) {
    Trajectory<State> traj;
    traj.times.reserve(static_cast<std::size_t>(nsteps) + 1);
    traj.states.reserve(static_cast<std::size_t>(nsteps) + 1);
    traj.times.push_back(t0);
    traj.states.push_back(y0);
    State y = y0;
    double h = (t1 - t0) / static_cast<double>(nsteps);
    for (long k = 0; k < nsteps; k++) {
        double t = t0 + static_cast<double>(k) * h;
        y = implicit_midpoint_step(A, t, h, y);
        traj.times.push_back(k + 1 == nsteps ? t1 : t + h);
        traj.states.push_back(y);
        traj.rhs_evaluations++;
        traj.steps_accepted++;
    }
    return traj;
}

} // namespace mathieu
