// pid.hpp - time-triggered PID baseline acting directly on thrust, with
// acceleration feedforward and an anti-windup clamp on the integral.
#pragma once

#include <cmath>

#include "uam/plant.hpp"
#include "uam/trajectory.hpp"
#include "uam/vec3.hpp"

namespace uam {

struct PIDGains {
    DiagGain3 kp{8.0, 8.0, 10.0};
    DiagGain3 ki{1.5, 1.5, 8.0};
    DiagGain3 kd{10.0, 10.0, 13.0};
    double i_max = 20.0;  // per-axis |integral| clamp, m*s

    bool valid() const { return kp.valid() && ki.valid() && kd.valid() && i_max > 0.0; }
};

struct PIDState {
    Vec3 integral;  // accumulated position error, m*s
    long windup_count = 0;
};

// U_c = -Kp e1 - Ki int(e1) - Kd e1_dot + m_t pd_ddot, in newtons.
// Rectangle-rule integral accumulation; no gravity feedforward (the hover
// command has to come through the integral term).
inline Vec3 pid_control(const Vec3& e1, const Vec3& e1_dot, PIDState& pid,
                        const TrajectorySample& traj, const PlantParams& pp, const PIDGains& g,
                        double dt) {
    pid.integral += dt * e1;
    for (int j = 0; j < 3; ++j) {
        if (std::abs(pid.integral[j]) > g.i_max) {
            pid.integral[j] = g.i_max * sgn(pid.integral[j]);
            pid.windup_count += 1;
        }
    }
    return -(g.kp * e1) - (g.ki * pid.integral) - (g.kd * e1_dot) + pp.m_t * traj.pd_ddot;
}

}  // namespace uam
