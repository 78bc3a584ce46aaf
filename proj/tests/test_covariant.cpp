// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qhdw/covariant.hpp"
#include "qhdw/madelung.hpp"
#include "qhdw/potentials.hpp"
#include "qhdw/spectral.hpp"
#include "qhdw/verify.hpp"

using namespace qhdw;

namespace {
constexpr double pi = std::numbers::pi;

ScalarField constant(const Grid1D& g, double v) {
    return ScalarField::from_function(g, [v](double) { return v; });
}
} // namespace

TEST_CASE("lorentz factor") {
    CHECK(lorentz_factor(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(lorentz_factor(0.6, 1.0) == doctest::Approx(1.25).epsilon(1e-14));
    double g = lorentz_factor(0.99999, 1.0);
    CHECK(std::isfinite(g));
    CHECK(g == doctest::Approx(223.60735676962474).epsilon(1e-12));
    CHECK_THROWS_AS(lorentz_factor(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(lorentz_factor(-2.0, 1.0), ValidationError);
}

TEST_CASE("stress-energy of a static fluid") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.2;
    p.c = 2.0;
    ScalarField V(g);
    RelFluidState st(constant(g, 1.5), ScalarField(g), 0.0, p.c);
    StressEnergy1p1 T = stress_energy(st, p, V);
    for (int j = 0; j < g.n; j += 9) {
        CHECK(T.T00[j] == doctest::Approx(1.5 * p.c * p.c).epsilon(1e-14));
        CHECK(T.T0x[j] == doctest::Approx(0.0));
        CHECK(T.Txx[j] == doctest::Approx(0.2 * 1.5).epsilon(1e-14)); // P = kT rho
    }
}

TEST_CASE("stress-energy vanishes with the density floor") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.2;
    p.c = 2.0;
    ScalarField V(g);
    RelFluidState st(constant(g, 1e-12), ScalarField(g), 0.0, p.c);
    StressEnergy1p1 T = stress_energy(st, p, V);
    CHECK(max_abs(T.T00) < 1e-11);
    CHECK(max_abs(T.Txx) < 1e-12);
}

TEST_CASE("moving uniform fluid matches the boosted rest-frame tensor") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.3;
    p.c = 2.0;
    ScalarField V(g);
    double rho0 = 1.2, v = 0.7 * p.c;
    RelFluidState st(constant(g, rho0), constant(g, v), 0.0, p.c);
    StressEnergy1p1 T = stress_energy(st, p, V);

    // rest tensor: T00 = rho c^2, T0x = 0, Txx = P; boost with beta = v/c
    double P = p.kT * rho0;
    double beta = v / p.c;
    double gamma2 = 1.0 / (1.0 - beta * beta);
    double T00 = gamma2 * (rho0 * p.c * p.c + beta * beta * P);
    double T0x = gamma2 * beta * (rho0 * p.c * p.c + P);
    double Txx = gamma2 * (P + beta * beta * rho0 * p.c * p.c);
    for (int j = 0; j < g.n; j += 9) {
        CHECK(std::abs(T.T00[j] - T00) / T00 < 1e-10);
        CHECK(std::abs(T.T0x[j] - T0x) / T0x < 1e-10);
        CHECK(std::abs(T.Txx[j] - Txx) / Txx < 1e-10);
    }
}

TEST_CASE("enthalpy density closed forms") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.4;
    p.c = 2.0;
    // uniform rho: V_Q = 0, h = kT rho + V rho
    ScalarField V = constant(g, 0.9);
    ScalarField rho = constant(g, 1.3);
    ScalarField h = enthalpy_density(rho, p, V);
    for (int j = 0; j < g.n; j += 9)
        CHECK(h[j] == doctest::Approx(0.4 * 1.3 + 0.9 * 1.3).epsilon(1e-12));

    PhysicalParams p0 = p;
    p0.kT = 0.0;
    ScalarField h0 = enthalpy_density(rho, p0, ScalarField(g));
    CHECK(max_abs(h0) < 1e-12);
}

TEST_CASE("force density closed forms") {
    Grid1D g(128, 16.0);
    ScalarField rho = constant(g, 1.0);
    // (V + VQ) rho constant: zero force
    CHECK(max_abs(force_density(rho, constant(g, 2.0), ScalarField(g))) < 1e-12);

    // (V + VQ) rho = alpha sin(kx): force = alpha k cos(kx)
    double k = 2.0 * pi / g.length;
    ScalarField V = ScalarField::from_function(g, [&](double x) { return 0.7 * std::sin(k * x); });
    ScalarField F = force_density(rho, V, ScalarField(g));
    for (int j = 0; j < g.n; j += 11)
        CHECK(F[j] == doctest::Approx(0.7 * k * std::cos(k * g.x(j))).epsilon(1e-10));
}

TEST_CASE("continuity residual detects transport and violation") {
    Grid1D g(128, 20.0);
    double c = 5.0;
    double v0 = 0.8;
    double k = 2.0 * pi / g.length;
    // rigid advection rho(x - v0 t)
    SpacetimeField rho_h = SpacetimeField::from_function(
        g, 0.0, 0.002, 7,
        [&](double x, double t) { return 1.0 + 0.3 * std::cos(k * (x - v0 * t)); });
    SpacetimeField v_h = SpacetimeField::from_function(g, 0.0, 0.002, 7,
                                                       [&](double, double) { return v0; });
    ScalarField r = continuity_residual(rho_h, v_h, c, 3);
    CHECK(max_abs(r) < 1e-8);

    // static uniform fluid
    SpacetimeField rho_u = SpacetimeField::from_function(g, 0.0, 0.01, 5,
                                                         [](double, double) { return 1.0; });
    SpacetimeField v_u = SpacetimeField::from_function(g, 0.0, 0.01, 5,
                                                       [](double, double) { return 0.0; });
    CHECK(max_abs(continuity_residual(rho_u, v_u, c, 2)) < 1e-13);

    // deliberate violation: rho grows uniformly, v = 0
    SpacetimeField rho_g = SpacetimeField::from_function(g, 0.0, 0.01, 5,
                                                         [](double, double t) { return 1.0 + t; });
    ScalarField bad = continuity_residual(rho_g, v_u, c, 2);
    CHECK(field_mean(bad) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("continuity residual rejects misaligned histories") {
    Grid1D g(64, 10.0);
    SpacetimeField a = SpacetimeField::from_function(g, 0.0, 0.01, 5, [](double, double) { return 1.0; });
    SpacetimeField b = SpacetimeField::from_function(g, 0.0, 0.02, 5, [](double, double) { return 0.0; });
    CHECK_THROWS_AS(continuity_residual(a, b, 1.0, 2), ValidationError);
}

TEST_CASE("primitive recovery closed forms") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.0;
    p.c = 2.0;
    ScalarField V(g);

    // v = 0, V = VQ = 0 (uniform): E = rho c^2
    RelFluidState guess(constant(g, 1.0), ScalarField(g), 0.0, p.c);
    ConservedPair cons{constant(g, 3.0 * p.c * p.c), ScalarField(g)};
    RelFluidState rec = primitive_recovery(cons, p, V, guess);
    for (int j = 0; j < g.n; j += 9) {
        CHECK(rec.rho[j] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(rec.v[j] == doctest::Approx(0.0));
    }
}

TEST_CASE("recovery roundtrip on a smooth moving state") {
    Grid1D g(128, 10.0);
    PhysicalParams p;
    p.kT = 0.1;
    p.hbar = 0.5;
    p.c = 3.0;
    ScalarField V = ScalarField::from_function(g, [&](double x) { return 0.2 * std::cos(2.0 * pi * x / g.length); });
    ScalarField rho = random_positive_field(g, 99, 3, 0.3);
    ScalarField v = ScalarField::from_function(g, [&](double x) { return 0.4 * p.c * std::sin(2.0 * pi * x / g.length); });
    RelFluidState st(rho, v, 0.0, p.c);
    ConservedPair cons = conserved_from_primitives(st, p, V);
    RelFluidState rec = primitive_recovery(cons, p, V, st);
    CHECK(max_abs_diff(rec.rho, st.rho) < 1e-10);
    CHECK(max_abs_diff(rec.v, st.v) / p.c < 1e-10);
}

TEST_CASE("recovery: M = 0 gives v = 0") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.2;
    p.c = 2.0;
    ScalarField V(g);
    RelFluidState st(random_positive_field(g, 3, 2, 0.2), ScalarField(g), 0.0, p.c);
    ConservedPair cons = conserved_from_primitives(st, p, V);
    RelFluidState rec = primitive_recovery(cons, p, V, st);
    CHECK(max_abs(rec.v) < 1e-12);
}

TEST_CASE("uniform static fluid is a fixed point of the stepper") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.kT = 0.3;
    p.c = 4.0;
    ScalarField V(g);
    RelFluidState st(constant(g, 1.0), ScalarField(g), 0.0, p.c);
    double dt = 0.4 * g.dx / p.c;
    RelFluidState out = st;
    for (int i = 0; i < 50; ++i) out = rel_fluid_step(out, p, V, dt);
    CHECK(max_abs_diff(out.rho, st.rho) < 1e-12);
    CHECK(max_abs(out.v) < 1e-12);
}

TEST_CASE("CFL violation is rejected") {
    Grid1D g(64, 10.0);
    PhysicalParams p;
    p.c = 4.0;
    ScalarField V(g);
    RelFluidState st(constant(g, 1.0), ScalarField(g), 0.0, p.c);
    CHECK_THROWS_WITH_AS(rel_fluid_step(st, p, V, g.dx / p.c), doctest::Contains("CFL"),
                         ValidationError);
}

TEST_CASE("acoustic wave propagates at the isothermal sound speed") {
    Grid1D g(256, 4.0 * pi);
    PhysicalParams p;
    p.kT = 0.01;
    p.hbar = 1e-8; // quantum term switched off
    p.c = 10.0;
    ScalarField V(g);
    double A = 1e-4;
    int mode = 2;
    double k = 2.0 * pi * mode / g.length; // k = 1
    double cs = std::sqrt(p.kT / p.mass);
    ScalarField rho = ScalarField::from_function(g, [&](double x) { return 1.0 + A * std::cos(k * x); });
    ScalarField v = ScalarField::from_function(g, [&](double x) { return cs * A * std::cos(k * x); });
    RelFluidState init(rho, v, 0.0, p.c);
    double t_end = 6.0;
    RelSolution sol = rel_integrate(init, p, V, t_end, 0.0, 1 << 30);
    REQUIRE(!sol.aborted);

    // phase of the k-mode moved by cs * k * t; track it via the density mode
    auto mode_phase = [&](const ScalarField& f) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j < g.n; ++j) {
            re += f[j] * std::cos(k * g.x(j));
            im -= f[j] * std::sin(k * g.x(j));
        }
        return std::atan2(im, re);
    };
    double dphi = mode_phase(sol.states.back().rho) - mode_phase(init.rho);
    // unwrap into (-2pi, 0]: right-mover accumulates negative phase
    while (dphi > 0.0) dphi -= 2.0 * pi;
    while (dphi < -2.0 * pi) dphi += 2.0 * pi;
    double speed = -dphi / (k * t_end);
    CHECK(speed == doctest::Approx(cs).epsilon(0.02));
}

TEST_CASE("conserved integrals drift below 1e-10 per 1000 steps") {
    Grid1D g(128, 4.0 * pi);
    PhysicalParams p;
    p.kT = 0.01;
    p.c = 10.0;
    ScalarField V(g);
    double k = 2.0 * pi * 2 / g.length;
    ScalarField rho = ScalarField::from_function(g, [&](double x) { return 1.0 + 1e-3 * std::cos(k * x); });
    RelFluidState init(rho, ScalarField(g), 0.0, p.c);
    RelSolution sol = rel_integrate(init, p, V, 1.0, 0.0, 1 << 30);
    REQUIRE(!sol.aborted);
    double e_drift = std::abs(sol.integral_E.back() - sol.integral_E.front()) /
                     std::abs(sol.integral_E.front());
    double m_scale = std::abs(sol.integral_E.front()) / p.c;
    double m_drift = std::abs(sol.integral_M.back() - sol.integral_M.front()) / m_scale;
    double per1000 = 1000.0 / static_cast<double>(sol.total_steps);
    CHECK(e_drift * per1000 < 1e-10);
    CHECK(m_drift * per1000 < 1e-10);
}

TEST_CASE("enthalpy and pressure formulations give identical spatial residuals") {
    Grid1D g(128, 10.0);
    PhysicalParams p;
    p.kT = 0.1;
    p.hbar = 0.5;
    p.c = 3.0;
    ScalarField V = ScalarField::from_function(g, [&](double x) { return 0.2 * std::cos(2.0 * pi * x / g.length); });
    ScalarField rho = random_positive_field(g, 5150, 3, 0.3);
    ScalarField v = ScalarField::from_function(g, [&](double x) { return 0.3 * p.c * std::sin(2.0 * pi * x / g.length); });
    RelFluidState st(rho, v, 0.0, p.c);
    StressEnergy1p1 Th = stress_energy(st, p, V, TensorForm::enthalpy);
    StressEnergy1p1 Tp = stress_energy(st, p, V, TensorForm::pressure);
    CHECK(max_abs_diff(Th.T0x, Tp.T0x) < 1e-14); // off-diagonal identical
    ScalarField vq = bohm_potential(rho, p, BohmForm::quantum);
    ScalarField lhs = spatial_derivative(Th.Txx, 1);
    ScalarField rhs = spatial_derivative(Tp.Txx, 1) + force_density(rho, V, vq);
    CHECK(max_abs_diff(lhs, rhs) < 1e-8);
}

TEST_CASE("cold pulse converges to the Madelung solution as c^-2") {
    Grid1D g(128, 4.0 * pi);
    PhysicalParams base;
    base.kT = 0.01;
    ScalarField V(g);
    double A = 3e-5;
    double k = 2.0 * pi * 4 / g.length; // k = 2
    ScalarField rho = ScalarField::from_function(g, [&](double x) { return 1.0 + A * std::cos(k * x); });
    double t_end = 1.0;
    double dt = std::min(0.4 * g.dx / 40.0, 0.08 * g.dx * g.dx);

    MadelungState minit(rho, ScalarField(g), 0.0);
    IntegrateOptions mopts;
    mopts.dt = dt;
    mopts.snapshot_stride = 1 << 30;
    MadelungSolution mref = integrate(minit, base, V, t_end, mopts);
    REQUIRE(!mref.aborted);

    std::vector<double> cs{10.0, 20.0, 40.0}, errs;
    for (double c : cs) {
        PhysicalParams p = base;
        p.c = c;
        RelFluidState init(rho, ScalarField(g), 0.0, c);
        RelSolution sol = rel_integrate(init, p, V, t_end, dt, 1 << 30);
        REQUIRE(!sol.aborted);
        errs.push_back(l2_norm(sol.states.back().rho - mref.states.back().rho));
    }
    CHECK(errs[0] > errs[1]);
    CHECK(errs[1] > errs[2]);
    double slope = std::log(errs[0] / errs[2]) / std::log(4.0);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15)); // 2 +- 0.3
}
