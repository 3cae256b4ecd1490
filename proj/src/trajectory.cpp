#include "uam/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace uam {

TrajKind traj_kind_from_string(const std::string& s) {
    if (s == "ellipse") return TrajKind::ellipse;
    if (s == "figure_eight") return TrajKind::figure_eight;
    if (s == "setpoint") return TrajKind::setpoint;
    throw std::invalid_argument("unknown trajectory kind '" + s + "'");
}

std::string to_string(TrajKind k) {
    switch (k) {
        case TrajKind::ellipse: return "ellipse";
        case TrajKind::figure_eight: return "figure_eight";
        case TrajKind::setpoint: return "setpoint";
    }
    return "?";
}

namespace {

struct Ramp {
    double r, r1, r2, r3;  // value and first three derivatives
};

// quintic smooth start: r = tau^3 (10 - 15 tau + 6 tau^2), clamped at 1
Ramp ramp_at(double t, double T) {
    if (t >= T) return {1.0, 0.0, 0.0, 0.0};
    const double tau = t / T;
    const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau, t5 = t4 * tau;
    Ramp out;
    out.r = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    out.r1 = (30.0 * t2 - 60.0 * t3 + 30.0 * t4) / T;
    out.r2 = (60.0 * tau - 180.0 * t2 + 120.0 * t3) / (T * T);
    out.r3 = (60.0 - 360.0 * tau + 360.0 * t2) / (T * T * T);
    return out;
}

struct Shape {
    Vec3 s, s1, s2, s3;  // offset from center and derivatives
};

Shape shape_at(const TrajectorySpec& sp, double t) {
    const double w = sp.omega;
    Shape out;
    switch (sp.kind) {
        case TrajKind::ellipse: {
            const double c = std::cos(w * t), s = std::sin(w * t);
            out.s = {sp.a * c, sp.b * s, sp.alt_amp * s};
            out.s1 = {-sp.a * w * s, sp.b * w * c, sp.alt_amp * w * c};
            out.s2 = {-sp.a * w * w * c, -sp.b * w * w * s, -sp.alt_amp * w * w * s};
            out.s3 = {sp.a * w * w * w * s, -sp.b * w * w * w * c, -sp.alt_amp * w * w * w * c};
            break;
        }
        case TrajKind::figure_eight: {
            const double s1v = std::sin(w * t), c1v = std::cos(w * t);
            const double s2v = std::sin(2.0 * w * t), c2v = std::cos(2.0 * w * t);
            const double w2 = 2.0 * w;
            out.s = {sp.a * s1v, sp.b * s2v, sp.alt_amp * s1v};
            out.s1 = {sp.a * w * c1v, sp.b * w2 * c2v, sp.alt_amp * w * c1v};
            out.s2 = {-sp.a * w * w * s1v, -sp.b * w2 * w2 * s2v, -sp.alt_amp * w * w * s1v};
            out.s3 = {-sp.a * w * w * w * c1v, -sp.b * w2 * w2 * w2 * c2v,
                      -sp.alt_amp * w * w * w * c1v};
            break;
        }
        case TrajKind::setpoint:
            break;  // all zero
    }
    return out;
}

}  // namespace

TrajectorySample traj_sample(const TrajectorySpec& spec, double t) {
    if (t < 0.0) throw std::invalid_argument("traj_sample: negative time");
    TrajectorySample out;
    if (spec.kind == TrajKind::setpoint) {
        out.p_d = spec.center;
        return out;
    }
    const Ramp r = ramp_at(t, spec.ramp);
    const Shape sh = shape_at(spec, t);
    // Leibniz products of ramp and shape
    out.p_d = spec.center + r.r * sh.s;
    out.pd_dot = r.r1 * sh.s + r.r * sh.s1;
    out.pd_ddot = r.r2 * sh.s + 2.0 * r.r1 * sh.s1 + r.r * sh.s2;
    out.pd_dddot = r.r3 * sh.s + 3.0 * r.r2 * sh.s1 + 3.0 * r.r1 * sh.s2 + r.r * sh.s3;
    return out;
}

}  // namespace uam
