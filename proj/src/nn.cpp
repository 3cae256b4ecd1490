#include "uam/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace uam {

double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

std::vector<double> phi(std::span<const double> z) {
    std::vector<double> out(z.size() + 1);
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = sigmoid(z[j]);
    out[z.size()] = 1.0;
    return out;
}

std::vector<double> phi_prime(std::span<const double> z) {
    const std::size_t n1 = z.size();
    std::vector<double> out((n1 + 1) * n1, 0.0);
    for (std::size_t j = 0; j < n1; ++j) {
        const double s = sigmoid(z[j]);
        out[j * n1 + j] = s * (1.0 - s);
    }
    return out;  // last row stays zero
}

double fro2(std::span<const double> m) {
    double s = 0.0;
    for (double v : m) s += v * v;
    return s;
}

NNWeights init_weights(const NNConfig& cfg, Rng& rng) {
    NNWeights w;
    w.v0.resize(cfg.v0_size());
    w.v1.resize(cfg.v1_size());
    for (auto& e : w.v0) e = rng.uniform(-cfg.init_scale, cfg.init_scale);
    for (auto& e : w.v1) e = rng.uniform(-cfg.init_scale, cfg.init_scale);
    return w;
}

// z = V0' xd, length n1
static void hidden_preact(const NNConfig& cfg, std::span<const double> v0,
                          std::span<const double> xd, std::span<double> z) {
    const int rows = cfg.v0_rows(), cols = cfg.v0_cols();
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += v0[std::size_t(i) * cols + j] * xd[std::size_t(i)];
        z[std::size_t(j)] = s;
    }
}

Vec3 nn_forward(const NNConfig& cfg, std::span<const double> v0, std::span<const double> v1,
                std::span<const double> xd) {
    if (v0.size() != cfg.v0_size() || v1.size() != cfg.v1_size() ||
        xd.size() != std::size_t(cfg.n0 + 1)) {
        throw std::invalid_argument("nn_forward: dimension mismatch");
    }
    std::vector<double> z(cfg.n1);
    hidden_preact(cfg, v0, xd, z);
    const std::vector<double> ph = phi(z);
    Vec3 out;
    const int rows = cfg.v1_rows(), cols = cfg.v1_cols();
    for (int c = 0; c < cols; ++c) {
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += v1[std::size_t(r) * cols + c] * ph[std::size_t(r)];
        out[c] = s;
    }
    return out;
}

void proj_in_place(std::span<double> raw, std::span<const double> w, double vbar) {
    const double n2 = fro2(w);
    if (n2 < vbar) return;
    double tr = 0.0;  // tr(w' raw)
    for (std::size_t i = 0; i < w.size(); ++i) tr += w[i] * raw[i];
    if (tr <= 0.0) return;
    const double c = tr / n2;
    for (std::size_t i = 0; i < w.size(); ++i) raw[i] -= c * w[i];
}

std::vector<double> proj(std::vector<double> raw, std::span<const double> w, double vbar) {
    proj_in_place(raw, w, vbar);
    return raw;
}

void nn_update_deriv(const NNConfig& cfg, std::span<const double> v0, std::span<const double> v1,
                     std::span<const double> xd, const Vec3& y2, std::span<double> dv0,
                     std::span<double> dv1) {
    const int n1 = cfg.n1;
    std::vector<double> z(n1);
    hidden_preact(cfg, v0, xd, z);
    const std::vector<double> ph = phi(z);

    // dV1 raw = Gamma1 * phi_hat * y2'
    for (int r = 0; r < cfg.v1_rows(); ++r) {
        for (int c = 0; c < cfg.v1_cols(); ++c) {
            dv1[std::size_t(r) * cfg.v1_cols() + c] = cfg.gamma1 * ph[std::size_t(r)] * y2[c];
        }
    }
    proj_in_place(dv1, v1, cfg.vbar1);

    // q = phi'(z)' V1 y2, length n1; phi' is diagonal over the first n1 rows
    // so q_j = sig'(z_j) * (V1 row j . y2)
    std::vector<double> q(n1);
    for (int j = 0; j < n1; ++j) {
        const double s = sigmoid(z[std::size_t(j)]);
        double row_dot = 0.0;
        for (int c = 0; c < cfg.v1_cols(); ++c) {
            row_dot += v1[std::size_t(j) * cfg.v1_cols() + c] * y2[c];
        }
        q[std::size_t(j)] = s * (1.0 - s) * row_dot;
    }
    // dV0 raw = Gamma0 * xd * q'
    for (int r = 0; r < cfg.v0_rows(); ++r) {
        for (int c = 0; c < cfg.v0_cols(); ++c) {
            dv0[std::size_t(r) * cfg.v0_cols() + c] = cfg.gamma0 * xd[std::size_t(r)] * q[std::size_t(c)];
        }
    }
    proj_in_place(dv0, v0, cfg.vbar0);
}

void clamp_to_ball(std::span<double> w, double vbar) {
    const double n2 = fro2(w);
    if (n2 <= vbar) return;
    const double s = std::sqrt(vbar / n2);
    for (auto& e : w) e *= s;
}

}  // namespace uam
