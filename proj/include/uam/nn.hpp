// nn.hpp - three-layer sigmoid network approximating the friction term at
// the desired velocity, with gradient-type weight update laws and a
// norm-ball projection guard.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uam/rng.hpp"
#include "uam/vec3.hpp"

namespace uam {

struct NNConfig {
    int n0 = 3;  // input layer width (desired velocity)
    int n1 = 4;  // hidden layer width
    int n2 = 3;  // output layer width
    double vbar0 = 100.0;  // Frobenius-norm-squared bound on V0
    double vbar1 = 100.0;  // Frobenius-norm-squared bound on V1
    double gamma0 = 100.0;  // learning-rate diagonal, input weights
    double gamma1 = 100.0;  // learning-rate diagonal, output weights
    double init_scale = 0.1;  // uniform(-s, s) weight init

    int v0_rows() const { return n0 + 1; }
    int v0_cols() const { return n1; }
    int v1_rows() const { return n1 + 1; }
    int v1_cols() const { return n2; }
    std::size_t v0_size() const { return std::size_t(v0_rows()) * v0_cols(); }
    std::size_t v1_size() const { return std::size_t(v1_rows()) * v1_cols(); }

    bool valid() const {
        return n0 == 3 && n2 == 3 && n1 >= 1 && vbar0 > 0.0 && vbar1 > 0.0 && gamma0 > 0.0 &&
               gamma1 > 0.0 && init_scale >= 0.0;
    }
};

// Estimated weight matrices, row-major: v0 is (n0+1) x n1, v1 is (n1+1) x n2.
struct NNWeights {
    std::vector<double> v0;
    std::vector<double> v1;
};

// input vector [pd_dot; 1], the trailing 1 absorbs biases
struct NNInput {
    std::vector<double> x;

    explicit NNInput(const Vec3& pd_dot) : x{pd_dot.x, pd_dot.y, pd_dot.z, 1.0} {}
};

double sigmoid(double a);

// hidden activations augmented with the constant 1: [sig(z_1)..sig(z_n1), 1]
std::vector<double> phi(std::span<const double> z);

// Jacobian of phi wrt z, (n1+1) x n1 row-major; last row is zero because the
// augmented constant has no dependence on z.
std::vector<double> phi_prime(std::span<const double> z);

double fro2(std::span<const double> m);

NNWeights init_weights(const NNConfig& cfg, Rng& rng);

Vec3 nn_forward(const NNConfig& cfg, std::span<const double> v0, std::span<const double> v1,
                std::span<const double> xd);
inline Vec3 nn_forward(const NNConfig& cfg, const NNWeights& w, const NNInput& in) {
    return nn_forward(cfg, w.v0, w.v1, in.x);
}

// Norm-ball projection: pass raw through when strictly inside the Frobenius
// ball or when the update points inward at the boundary; otherwise remove
// the outward radial component so d/dt |w|_F^2 <= 0 there.
void proj_in_place(std::span<double> raw, std::span<const double> w, double vbar);
std::vector<double> proj(std::vector<double> raw, std::span<const double> w, double vbar);

// Projected weight update laws:
//   dV1 = proj(Gamma1 * phi(V0' xd) * y2')
//   dV0 = proj(Gamma0 * xd * [phi'(V0' xd)' V1 y2]')
// The un-projected updates are Gamma-scaled gradients of y2' fd_hat.
void nn_update_deriv(const NNConfig& cfg, std::span<const double> v0, std::span<const double> v1,
                     std::span<const double> xd, const Vec3& y2, std::span<double> dv0,
                     std::span<double> dv1);

// Discrete-time safeguard for the integrated weight ODE: explicit steps can
// land slightly outside the ball even though the projected field never
// points out of it; rescale back onto the boundary when that happens.
void clamp_to_ball(std::span<double> w, double vbar);

}  // namespace uam
