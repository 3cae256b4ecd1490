// plant.hpp - synthetic translational plant: normalized double-integrator
// with viscous + smoothed-Coulomb friction, bounded sinusoidal disturbance
// (lumped arm reaction + unmodeled forces), and a divergence guard.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "uam/vec3.hpp"

namespace uam {

struct PlantState {
    Vec3 p;  // position, m
    Vec3 v;  // velocity, m/s
};

struct PlantParams {
    double m_t = 4.85;  // total mass, kg
    double g = 9.8;     // m/s^2
    Vec3 visc{2.0, 2.0, 2.4};    // per-axis viscous coefficients, N*s/m
    Vec3 coul{0.2, 0.2, 0.25};   // per-axis Coulomb magnitudes, N
    double v_s = 0.05;           // Coulomb smoothing velocity, m/s
    // Lumped arm-reaction and unmodeled forcing. Frequencies are chosen
    // incommensurate with the stock trajectory rate so the forcing is not
    // expressible through the desired-velocity embedding.
    Vec3 dist_amp{0.6, 0.6, 0.5};    // m/s^2
    Vec3 dist_freq{1.1, 1.3, 0.7};   // rad/s
    Vec3 dist_phase{0.0, 0.0, 0.0};  // rad
    double delta_bar = 1.0;          // certified disturbance bound, m/s^2
    double v_max = 50.0;             // divergence guard on |v|, m/s

    bool valid() const {
        return m_t > 0.0 && g > 0.0 && v_s > 0.0 && v_max > 0.0 &&
               norm(dist_amp) <= delta_bar + 1e-12;
    }
    // global Lipschitz constant of the friction acceleration
    double friction_lipschitz() const {
        const double vmax = std::max(visc.x, std::max(visc.y, visc.z));
        const double cmax = std::max(coul.x, std::max(coul.y, coul.z));
        return (vmax + cmax / v_s) / m_t;
    }
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// friction acceleration f(v) = -(visc.*v + coul.*tanh(v/v_s)) / m_t
inline Vec3 friction_true(const Vec3& v, const PlantParams& pp) {
    if (!finite(v)) throw std::invalid_argument("friction_true: non-finite velocity");
    Vec3 f;
    f.x = -(pp.visc.x * v.x + pp.coul.x * std::tanh(v.x / pp.v_s)) / pp.m_t;
    f.y = -(pp.visc.y * v.y + pp.coul.y * std::tanh(v.y / pp.v_s)) / pp.m_t;
    f.z = -(pp.visc.z * v.z + pp.coul.z * std::tanh(v.z / pp.v_s)) / pp.m_t;
    return f;
}

// lumped disturbance, |.| <= delta_bar for all t by construction
inline Vec3 disturbance(double t, const PlantParams& pp) {
    return {pp.dist_amp.x * std::sin(pp.dist_freq.x * t + pp.dist_phase.x),
            pp.dist_amp.y * std::sin(pp.dist_freq.y * t + pp.dist_phase.y),
            pp.dist_amp.z * std::sin(pp.dist_freq.z * t + pp.dist_phase.z)};
}

struct PlantDeriv {
    Vec3 p_dot;  // m/s
    Vec3 v_dot;  // m/s^2
};

inline PlantDeriv plant_deriv(const PlantState& st, const Vec3& u, double t, const PlantParams& pp) {
    if (norm(st.v) > pp.v_max) {
        throw DivergenceError("plant velocity " + std::to_string(norm(st.v)) +
                              " m/s exceeds limit at t=" + std::to_string(t) + ", p=(" +
                              std::to_string(st.p.x) + ", " + std::to_string(st.p.y) + ", " +
                              std::to_string(st.p.z) + "), v=(" + std::to_string(st.v.x) + ", " +
                              std::to_string(st.v.y) + ", " + std::to_string(st.v.z) + ")");
    }
    return {st.v, u + disturbance(t, pp) + friction_true(st.v, pp)};
}

// normalized control u = U_c/m_t - g*e3 and its inverse
inline Vec3 u_from_uc(const Vec3& uc, const PlantParams& pp) {
    return {uc.x / pp.m_t, uc.y / pp.m_t, uc.z / pp.m_t - pp.g};
}
inline Vec3 uc_from_u(const Vec3& u, const PlantParams& pp) {
    return {pp.m_t * u.x, pp.m_t * u.y, pp.m_t * (u.z + pp.g)};
}

}  // namespace uam
