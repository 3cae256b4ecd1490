// trajectory.hpp - analytic reference trajectories (ellipse, figure-eight,
// setpoint) with a smooth start ramp and exact derivatives through third
// order.
#pragma once

#include <string>

#include "uam/vec3.hpp"

namespace uam {

struct TrajectorySample {
    Vec3 p_d;       // m
    Vec3 pd_dot;    // m/s
    Vec3 pd_ddot;   // m/s^2
    Vec3 pd_dddot;  // m/s^3
};

enum class TrajKind { ellipse, figure_eight, setpoint };

struct TrajectorySpec {
    TrajKind kind = TrajKind::ellipse;
    Vec3 center{0.0, 0.0, 1.0};
    double a = 1.0;        // m, first semi-axis
    double b = 0.6;        // m, second semi-axis
    double alt_amp = 0.0;  // m, optional z sinusoid amplitude
    double omega = 0.5;    // rad/s
    double ramp = 3.0;     // s, smooth-start duration

    bool valid() const {
        if (kind == TrajKind::setpoint) return true;
        return omega > 0.0 && ramp > 0.0;
    }
};

TrajKind traj_kind_from_string(const std::string& s);
std::string to_string(TrajKind k);

TrajectorySample traj_sample(const TrajectorySpec& spec, double t);

}  // namespace uam
