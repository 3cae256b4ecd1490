// cfilter.hpp - arctan command filter producing a smooth tracked version of
// the virtual velocity command, plus the two-state compensation system that
// absorbs the filter-induced mismatch.
#pragma once

#include <cmath>

#include "uam/vec3.hpp"

namespace uam {

struct FilterState {
    Vec3 chi;  // filtered command, m/s
    Vec3 xi;   // its derivative, m/s^2
};

// Stock values give a ~20 rad/s, well-damped filter. The time scale must be
// fast against the compensator damping k: linearizing the filter/compensator
// loop yields s^3 + (rho/eps) s^2 + (zeta/eps^2) s + k (zeta/eps^2), which is
// Hurwitz only when rho/eps exceeds the effective k (including the switch-map
// slope, worst case about k + 5 k1). Slow settings destabilize the cascade.
struct FilterParams {
    double zeta = 1.0;
    double rho = 1.0;
    double filt_eps = 0.05;  // filter time scale

    bool valid() const { return zeta > 0.0 && rho > 0.0 && filt_eps > 0.0; }
};

struct CompState {
    Vec3 iota1;  // m
    Vec3 iota2;  // m/s
};

struct CompGains {
    DiagGain3 c1{1.0, 1.0, 1.2};
    DiagGain3 c2{1.0, 1.0, 1.2};
    DiagGain3 k{3.0, 3.0, 4.0};
    DiagGain3 k1{1.0, 1.0, 1.2};
    DiagGain3 k2{0.8, 0.8, 1.2};
    SwitchParams sw;

    bool valid() const {
        return c1.valid() && c2.valid() && k.valid() && k1.valid() && k2.valid() && sw.valid();
    }
};

inline Vec3 atan_cw(const Vec3& a) { return {std::atan(a.x), std::atan(a.y), std::atan(a.z)}; }

struct FilterDeriv {
    Vec3 chi_dot;
    Vec3 xi_dot;
};

inline FilterDeriv filter_deriv(const FilterState& fs, const Vec3& alpha1, const FilterParams& fp) {
    const double inv_e2 = 1.0 / (fp.filt_eps * fp.filt_eps);
    const Vec3 xi_dot =
        inv_e2 * (-fp.zeta * atan_cw(fs.chi - alpha1) - fp.rho * atan_cw(fp.filt_eps * fs.xi));
    return {fs.xi, xi_dot};
}

// chi starts on the virtual control, xi at rest
inline FilterState filter_init(const Vec3& alpha1_0) { return {alpha1_0, Vec3{}}; }

struct CompDeriv {
    Vec3 iota1_dot;
    Vec3 iota2_dot;
};

inline CompDeriv comp_deriv(const CompState& cs, const Vec3& chi, const Vec3& alpha1,
                            const Vec3& fd_hat, const CompGains& g) {
    const Vec3 i1 = cs.iota1;
    const Vec3 i2 = cs.iota2;
    const Vec3 iota1_dot =
        (i2 + chi - alpha1) - g.c1 * (norm2(i1) * i1) - g.k * i1 - g.k1 * theta(i1, g.sw);
    const Vec3 iota2_dot =
        -i1 - g.c2 * (norm2(i2) * i2) - g.k2 * frac_power(i2, g.sw.p_exp) + fd_hat;
    return {iota1_dot, iota2_dot};
}

}  // namespace uam
