#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uam/plant.hpp"
#include "uam/rk4.hpp"
#include "uam/rng.hpp"

using namespace uam;

TEST_CASE("friction: pinned values and odd symmetry") {
    PlantParams pp;
    CHECK(norm(friction_true(Vec3{}, pp)) == 0.0);

    PlantParams visc_only;
    visc_only.visc = {2.0, 2.0, 2.0};
    visc_only.coul = {0.0, 0.0, 0.0};
    const Vec3 f = friction_true(Vec3{1, 0, 0}, visc_only);
    CHECK(f.x == doctest::Approx(-2.0 / 4.85).epsilon(1e-12));
    CHECK(f.y == 0.0);

    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const Vec3 a = friction_true(v, pp);
        const Vec3 b = friction_true(-v, pp);
        CHECK(norm(a + b) < 1e-15);
    }
}

TEST_CASE("friction: global Lipschitz constant holds on random pairs") {
    PlantParams pp;
    const double lf = pp.friction_lipschitz();
    Rng rng(9);
    for (int i = 0; i < 20000; ++i) {
        const Vec3 v1{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Vec3 v2{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const double lhs = norm(friction_true(v1, pp) - friction_true(v2, pp));
        CHECK(lhs <= lf * norm(v1 - v2) * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("disturbance: bounded by delta_bar under dense sampling") {
    PlantParams pp;
    CHECK(pp.valid());
    double sup = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        sup = std::max(sup, norm(disturbance(i * 1e-3, pp)));
    }
    CHECK(sup <= pp.delta_bar + 1e-12);

    PlantParams quiet = pp;
    quiet.dist_amp = {0, 0, 0};
    CHECK(norm(disturbance(17.3, quiet)) == 0.0);

    // all phases at the sine peak reproduce the amplitudes exactly
    PlantParams peaked = pp;
    peaked.dist_freq = {1.0, 1.0, 1.0};
    peaked.dist_phase = {M_PI / 2, M_PI / 2, M_PI / 2};
    const Vec3 d = disturbance(0.0, peaked);
    CHECK(norm(d - peaked.dist_amp) < 1e-15);
}

TEST_CASE("plant_deriv: free drift, equilibrium, divergence guard") {
    PlantParams pp;
    pp.visc = {0, 0, 0};
    pp.coul = {0, 0, 0};
    pp.dist_amp = {0, 0, 0};
    const PlantState st{{0, 0, 1}, {1, 2, 3}};
    const PlantDeriv d = plant_deriv(st, Vec3{}, 0.0, pp);
    CHECK(norm(d.p_dot - Vec3{1, 2, 3}) == 0.0);
    CHECK(norm(d.v_dot) == 0.0);

    const PlantDeriv dz = plant_deriv(PlantState{}, Vec3{}, 0.0, pp);
    CHECK(norm(dz.p_dot) == 0.0);
    CHECK(norm(dz.v_dot) == 0.0);

    const PlantState fast{{0, 0, 0}, {60, 0, 0}};
    CHECK_THROWS_AS(plant_deriv(fast, Vec3{}, 0.0, pp), DivergenceError);
}

TEST_CASE("normalized control: hover identity and round trip") {
    PlantParams pp;
    const Vec3 hover{0, 0, pp.m_t * pp.g};
    CHECK(norm(u_from_uc(hover, pp)) < 1e-15);

    const Vec3 uc = uc_from_u(Vec3{0, 0, 1}, pp);
    CHECK(uc.z == doctest::Approx(52.38).epsilon(1e-12));

    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 u{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
        CHECK(norm(u_from_uc(uc_from_u(u, pp), pp) - u) < 1e-12);
    }
}

TEST_CASE("energy sanity: unforced plant with friction only dissipates") {
    PlantParams pp;
    pp.dist_amp = {0, 0, 0};
    std::vector<double> x{0, 0, 0, 1.5, -2.0, 1.0};  // p, v
    auto deriv = [&pp](double t, std::span<const double> s, std::span<double> ds) {
        const PlantState st{{s[0], s[1], s[2]}, {s[3], s[4], s[5]}};
        const PlantDeriv d = plant_deriv(st, Vec3{}, t, pp);
        ds[0] = d.p_dot.x; ds[1] = d.p_dot.y; ds[2] = d.p_dot.z;
        ds[3] = d.v_dot.x; ds[4] = d.v_dot.y; ds[5] = d.v_dot.z;
    };
    Rk4Workspace ws;
    double prev = norm(Vec3{x[3], x[4], x[5]});
    for (int i = 0; i < 20000; ++i) {
        rk4_step(deriv, std::span<double>(x), i * 1e-3, 1e-3, ws);
        if (i % 100 == 0) {
            const double now = norm(Vec3{x[3], x[4], x[5]});
            CHECK(now <= prev + 1e-12);
            prev = now;
        }
    }
}
