// controller.hpp - error coordinates, the two virtual control laws, and the
// event-triggered input with its dynamic trigger variable and zero-order hold.
#pragma once

#include <stdexcept>

#include "uam/cfilter.hpp"
#include "uam/plant.hpp"
#include "uam/trajectory.hpp"
#include "uam/vec3.hpp"

namespace uam {

struct ErrorCoords {
    Vec3 x1;  // p - p_d, m
    Vec3 x2;  // v - chi, m/s
    Vec3 y1;  // x1 - iota1
    Vec3 y2;  // x2 - iota2
};

struct CtrlGains {
    DiagGain3 beta1{1.0, 1.0, 1.2};
    DiagGain3 gamma1{1.0, 1.0, 1.2};
    DiagGain3 beta2{0.6, 0.6, 0.7};
    DiagGain3 gamma2{1.0, 1.0, 1.2};
    SwitchParams sw;  // shared p and eps with the compensator

    bool valid() const {
        return beta1.valid() && gamma1.valid() && beta2.valid() && gamma2.valid() && sw.valid();
    }
};

// The trigger threshold is sigma + kappa/delta, and any sign flip of a y2
// component jumps the hold error past it, so the event rate is set by the
// zero-crossing rate of y2. A small delta inflates the sgn dither far above
// the disturbance level and locks the loop into sampled sliding (an event at
// every tick); delta = 10 keeps the threshold near sigma so the disturbance
// carries y2 across zero only occasionally.
struct TriggerParams {
    double sigma = 0.05;  // m/s^2
    double delta = 10.0;  // dimensionless
    double kappa0 = 0.0;  // initial kappa

    bool valid() const { return sigma > 0.0 && delta > 0.0 && kappa0 >= 0.0; }
};

struct TriggerState {
    double kappa = 0.0;
    Vec3 u_held;            // zero-order-held command, m/s^2
    double t_last_event = 0.0;
    long event_count = 0;
};

inline ErrorCoords error_coords(const PlantState& plant, const TrajectorySample& traj,
                                const FilterState& fs, const CompState& cs) {
    ErrorCoords ec;
    ec.x1 = plant.p - traj.p_d;
    ec.x2 = plant.v - fs.chi;
    ec.y1 = ec.x1 - cs.iota1;
    ec.y2 = ec.x2 - cs.iota2;
    return ec;
}

// first virtual control (velocity command fed to the filter)
inline Vec3 alpha1(const TrajectorySample& traj, const ErrorCoords& ec, const CompState& cs,
                   const CtrlGains& g, const CompGains& cg) {
    const Vec3& i1 = cs.iota1;
    return traj.pd_dot - cg.c1 * (norm2(i1) * i1) - cg.k * i1 - cg.k1 * theta(i1, cg.sw) -
           g.beta1 * (norm2(ec.y1) * ec.y1) - g.gamma1 * theta(ec.y1, g.sw);
}

// second virtual control (acceleration command); chi_dot is read exactly
// from the filter state xi, never numerically differentiated
inline Vec3 alpha2(const Vec3& fs_xi, const ErrorCoords& ec, const CompState& cs,
                   const CtrlGains& g, const CompGains& cg) {
    const Vec3& i2 = cs.iota2;
    return fs_xi - ec.x1 - cg.c2 * (norm2(i2) * i2) - cg.k2 * frac_power(i2, cg.sw.p_exp) -
           g.beta2 * (norm2(ec.y2) * ec.y2) - g.gamma2 * frac_power(ec.y2, g.sw.p_exp);
}

// candidate transmission: alpha2 with the sign-robustness offset
inline Vec3 bar_u(const Vec3& alpha2_now, const Vec3& y2, double kappa, const TriggerParams& tp) {
    return alpha2_now - (tp.sigma + kappa / tp.delta) * sgn(y2);
}

// fires when any axis's hold error exceeds sigma + kappa/delta (strict)
inline bool trigger_fire(double kappa, const Vec3& e_tilde, const TriggerParams& tp) {
    for (int j = 0; j < 3; ++j) {
        if (kappa + tp.delta * (tp.sigma - std::abs(e_tilde[j])) < 0.0) return true;
    }
    return false;
}

inline double kappa_deriv(double kappa, const Vec3& e_tilde, const TriggerParams& tp) {
    double m = tp.sigma - std::abs(e_tilde.x);
    m = std::max(m, tp.sigma - std::abs(e_tilde.y));
    m = std::max(m, tp.sigma - std::abs(e_tilde.z));
    return -kappa + m;
}

inline TriggerState apply_event(const TriggerState& ts, const Vec3& bar_u_now, double t) {
    if (t < ts.t_last_event) throw std::logic_error("apply_event: time went backwards");
    TriggerState out = ts;
    out.u_held = bar_u_now;
    out.t_last_event = t;
    out.event_count += 1;
    return out;
}

}  // namespace uam
