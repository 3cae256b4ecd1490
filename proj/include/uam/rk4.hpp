// rk4.hpp - classical fixed-step Runge-Kutta integration over a flat state
// vector. One integrator serves plant, filter, compensator, NN weights and
// the trigger variable jointly so everything shares a single time base.
#pragma once

#include <span>
#include <vector>

namespace uam {

// Reusable stage buffers so tight loops do not allocate.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;

    void resize(std::size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

// deriv(t, x, dx) fills dx with the state derivative at (t, x).
template <typename F>
void rk4_step(F&& deriv, std::span<double> state, double t, double dt, Rk4Workspace& ws) {
    const std::size_t n = state.size();
    ws.resize(n);
    deriv(t, std::span<const double>(state), std::span<double>(ws.k1));
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = state[i] + 0.5 * dt * ws.k1[i];
    deriv(t + 0.5 * dt, std::span<const double>(ws.tmp), std::span<double>(ws.k2));
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = state[i] + 0.5 * dt * ws.k2[i];
    deriv(t + 0.5 * dt, std::span<const double>(ws.tmp), std::span<double>(ws.k3));
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = state[i] + dt * ws.k3[i];
    deriv(t + dt, std::span<const double>(ws.tmp), std::span<double>(ws.k4));
    for (std::size_t i = 0; i < n; ++i) {
        state[i] += dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
    }
}

// Value-returning convenience form.
template <typename F>
std::vector<double> rk4_step(F&& deriv, std::vector<double> state, double t, double dt) {
    Rk4Workspace ws;
    rk4_step(deriv, std::span<double>(state), t, dt, ws);
    return state;
}

}  // namespace uam
