// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/covariant.hpp"

#include <cmath>
#include <sstream>

#include "qhdw/potentials.hpp"
#include "qhdw/spectral.hpp"

namespace qhdw {

double lorentz_factor(double v, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("lorentz_factor: need finite c > 0");
    double beta = v / c;
    if (!(std::abs(beta) < 1.0))
        throw ValidationError("lorentz_factor: |v| must be strictly below c");
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

RelFluidState::RelFluidState(ScalarField rho_, ScalarField v_, double t, double c)
    : rho(std::move(rho_)), v(std::move(v_)), time(t) {
    if (!(rho.grid == v.grid)) throw ValidationError("RelFluidState: grid mismatch");
    rho.require_finite("RelFluidState.rho");
    v.require_finite("RelFluidState.v");
    if (field_min(rho) < 0.0) throw ValidationError("RelFluidState: density must be >= 0");
    if (max_abs(v) >= c) throw ValidationError("RelFluidState: |v| must stay below c");
}

ScalarField enthalpy_density(const ScalarField& rho, const PhysicalParams& p, const ScalarField& V) {
    ScalarField vq = bohm_potential(rho, p, BohmForm::quantum);
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j)
        out[j] = p.kT * rho[j] + (V[j] + vq[j]) * rho[j];
    return out;
}

StressEnergy1p1 stress_energy(const RelFluidState& st, const PhysicalParams& p,
                              const ScalarField& V, TensorForm form) {
    if (!p.finite_c()) throw ValidationError("stress_energy: needs a finite c");
    const int n = st.rho.size();
    ScalarField iso(st.rho.grid);
    if (form == TensorForm::enthalpy) {
        iso = enthalpy_density(st.rho, p, V);
    } else {
        for (int j = 0; j < n; ++j) iso[j] = p.kT * st.rho[j];
    }
    StressEnergy1p1 T{ScalarField(st.rho.grid), ScalarField(st.rho.grid), ScalarField(st.rho.grid)};
    const double c2 = p.c * p.c;
    for (int j = 0; j < n; ++j) {
        double g = lorentz_factor(st.v[j], p.c);
        double D = g * g * (p.kT * st.rho[j] / c2 + st.rho[j]);
        T.T00[j] = -iso[j] + D * c2;
        T.T0x[j] = D * p.c * st.v[j];
        T.Txx[j] = iso[j] + D * st.v[j] * st.v[j];
    }
    return T;
}

ScalarField force_density(const ScalarField& rho, const ScalarField& V, const ScalarField& VQ) {
    if (!(rho.grid == V.grid) || !(rho.grid == VQ.grid))
        throw ValidationError("force_density: grid mismatch");
    ScalarField wrho(rho.grid);
    for (int j = 0; j < rho.size(); ++j) wrho[j] = (V[j] + VQ[j]) * rho[j];
    return spatial_derivative(wrho, 1);
}

ScalarField continuity_residual(const SpacetimeField& rho_hist, const SpacetimeField& v_hist,
                                double c, int time_index) {
    if (!(c > 0.0)) throw ValidationError("continuity_residual: invalid c");
    if (!(rho_hist.grid == v_hist.grid) || rho_hist.count() != v_hist.count() ||
        rho_hist.dt != v_hist.dt || rho_hist.t0 != v_hist.t0)
        throw ValidationError("continuity_residual: misaligned histories");

    // 4th-order first time derivative, same stencil family as the
    // d'Alembertian path.
    if (time_index < 2 || time_index > rho_hist.count() - 3)
        throw ValidationError("continuity_residual: time index too close to the history boundary");
    const auto& m2 = rho_hist.at(time_index - 2);
    const auto& m1 = rho_hist.at(time_index - 1);
    const auto& p1 = rho_hist.at(time_index + 1);
    const auto& p2 = rho_hist.at(time_index + 2);
    ScalarField dtrho(rho_hist.grid);
    for (int j = 0; j < dtrho.size(); ++j)
        dtrho[j] = (-p2[j] + 8.0 * p1[j] - 8.0 * m1[j] + m2[j]) / (12.0 * rho_hist.dt);

    ScalarField flux(rho_hist.grid);
    const auto& r = rho_hist.at(time_index);
    const auto& v = v_hist.at(time_index);
    for (int j = 0; j < flux.size(); ++j) flux[j] = r[j] * v[j];
    ScalarField dxflux = spatial_derivative(flux, 1);
    return dtrho + dxflux;
}

ConservedPair conserved_from_primitives(const RelFluidState& st, const PhysicalParams& p,
                                        const ScalarField& V) {
    StressEnergy1p1 T = stress_energy(st, p, V, TensorForm::enthalpy);
    ConservedPair out{T.T00, ScalarField(st.rho.grid)};
    for (int j = 0; j < out.M.size(); ++j) out.M[j] = T.T0x[j] / p.c;
    return out;
}

namespace {

// Single-cell Newton solve for rho given E, M and the frozen potential
// b = kT + V + V_Q. Eliminating v = M c^2 / (E + b rho) leaves
//   f(rho) = rho (1 + kT/c^2) - (E + b rho)/c^2 + M^2 / (E + b rho) = 0.
double solve_cell(double E, double M, double b, double kT, double c, double rho0, int cell) {
    const double c2 = c * c;
    double rho = std::max(rho0, 0.0);
    // |v| < c requires E + b rho > |M| c.
    auto admissible = [&](double r) { return E + b * r > std::abs(M) * c; };
    if (!admissible(rho)) {
        // try to restore admissibility before iterating
        double need = (std::abs(M) * c - E) / (b != 0.0 ? b : 1.0);
        if (b > 0.0 && need > rho)
            rho = 1.0000001 * need;
        else {
            std::ostringstream os;
            os << "primitive_recovery: inadmissible state at cell " << cell << " (E = " << E
               << ", M = " << M << ")";
            throw NumericalError(os.str());
        }
    }
    double f = 0.0;
    for (int it = 0; it < 50; ++it) {
        double den = E + b * rho;
        f = rho * (1.0 + kT / c2) - den / c2 + M * M / den;
        double fp = (1.0 + kT / c2) - b / c2 - M * M * b / (den * den);
        double step = f / fp;
        double next = rho - step;
        int halvings = 0;
        while ((!admissible(next) || next < 0.0) && halvings < 60) {
            step *= 0.5;
            next = rho - step;
            ++halvings;
        }
        double delta = std::abs(next - rho);
        rho = next;
        if (delta < 1e-12 * std::max(1.0, std::abs(rho))) return rho;
    }
    std::ostringstream os;
    os << "primitive_recovery: no convergence at cell " << cell << " (residual " << f << ")";
    throw NumericalError(os.str());
}

} // namespace

RelFluidState primitive_recovery(const ConservedPair& cons, const PhysicalParams& p,
                                 const ScalarField& V, const RelFluidState& guess,
                                 int picard_sweeps) {
    if (!p.finite_c()) throw ValidationError("primitive_recovery: needs a finite c");
    if (!(cons.E.grid == guess.rho.grid)) throw ValidationError("primitive_recovery: grid mismatch");
    const int n = cons.E.size();
    const double c2 = p.c * p.c;

    ScalarField rho = guess.rho;
    ScalarField v = guess.v;
    for (int sweep = 0; sweep < std::max(1, picard_sweeps); ++sweep) {
        ScalarField vq = bohm_potential(rho, p, BohmForm::quantum);
        for (int j = 0; j < n; ++j) {
            double b = p.kT + V[j] + vq[j];
            rho[j] = solve_cell(cons.E[j], cons.M[j], b, p.kT, p.c, rho[j], j);
            v[j] = cons.M[j] * c2 / (cons.E[j] + b * rho[j]);
        }
    }
    return RelFluidState(std::move(rho), std::move(v), guess.time, p.c);
}

namespace {

struct ConservedRates {
    ScalarField dE;
    ScalarField dM;
};

ConservedRates conserved_rhs(const ConservedPair& cons, const PhysicalParams& p,
                             const ScalarField& V, const RelFluidState& guess,
                             RelFluidState& prims_out) {
    prims_out = primitive_recovery(cons, p, V, guess);
    StressEnergy1p1 T = stress_energy(prims_out, p, V, TensorForm::enthalpy);
    ScalarField FE(cons.E.grid);
    const double c2 = p.c * p.c;
    for (int j = 0; j < FE.size(); ++j) FE[j] = c2 * cons.M[j];
    ConservedRates r{-1.0 * spatial_derivative(FE, 1), -1.0 * spatial_derivative(T.Txx, 1)};
    if (!r.dE.all_finite() || !r.dM.all_finite())
        throw NumericalError("rel_fluid_step: non-finite flux divergence");
    return r;
}

ConservedPair axpy(const ConservedPair& base, double h, const ConservedRates& r) {
    ConservedPair out{base.E, base.M};
    for (int j = 0; j < out.E.size(); ++j) {
        out.E[j] = base.E[j] + h * r.dE[j];
        out.M[j] = base.M[j] + h * r.dM[j];
    }
    return out;
}

ConservedPair rk4_step(const ConservedPair& cons, const PhysicalParams& p, const ScalarField& V,
                       double dt, RelFluidState& prims) {
    RelFluidState s1 = prims, s2 = prims, s3 = prims, s4 = prims;
    ConservedRates k1 = conserved_rhs(cons, p, V, prims, s1);
    ConservedRates k2 = conserved_rhs(axpy(cons, 0.5 * dt, k1), p, V, s1, s2);
    ConservedRates k3 = conserved_rhs(axpy(cons, 0.5 * dt, k2), p, V, s2, s3);
    ConservedRates k4 = conserved_rhs(axpy(cons, dt, k3), p, V, s3, s4);
    ConservedPair out{cons.E, cons.M};
    for (int j = 0; j < out.E.size(); ++j) {
        out.E[j] += dt / 6.0 * (k1.dE[j] + 2.0 * k2.dE[j] + 2.0 * k3.dE[j] + k4.dE[j]);
        out.M[j] += dt / 6.0 * (k1.dM[j] + 2.0 * k2.dM[j] + 2.0 * k3.dM[j] + k4.dM[j]);
    }
    prims = s4; // warm start for the final recovery
    return out;
}

void check_cfl(double dt, const Grid1D& g, double c) {
    if (!(dt > 0.0)) throw ValidationError("rel_fluid_step: dt must be positive");
    if (dt > 0.5 * g.dx / c + 1e-15) {
        std::ostringstream os;
        os << "rel_fluid_step: dt = " << dt << " violates the CFL bound 0.5 dx/c = " << 0.5 * g.dx / c;
        throw ValidationError(os.str());
    }
}

} // namespace

RelFluidState rel_fluid_step(const RelFluidState& st, const PhysicalParams& p,
                             const ScalarField& V, double dt) {
    check_cfl(dt, st.rho.grid, p.c);
    ConservedPair cons = conserved_from_primitives(st, p, V);
    RelFluidState prims = st;
    ConservedPair next = rk4_step(cons, p, V, dt, prims);
    RelFluidState out = primitive_recovery(next, p, V, prims);
    out.time = st.time + dt;
    return out;
}

RelSolution rel_integrate(const RelFluidState& initial, const PhysicalParams& p,
                          const ScalarField& V, double t_end, double dt, int snapshot_stride) {
    if (!(t_end > initial.time)) throw ValidationError("rel_integrate: t_end must exceed state time");
    const Grid1D& g = initial.rho.grid;
    double dt_cfl = 0.4 * g.dx / p.c;
    double dt_disp = 0.08 * p.mass * g.dx * g.dx / p.hbar;
    double step = dt > 0.0 ? dt : std::min(dt_cfl, dt_disp);
    const double span = t_end - initial.time;
    auto steps = static_cast<long long>(std::ceil(span / step - 1e-12));
    step = span / static_cast<double>(steps);
    check_cfl(step, g, p.c);

    RelSolution sol;
    sol.dt = step;
    sol.snapshot_stride = std::max(1, snapshot_stride);
    sol.total_steps = steps;

    ConservedPair cons = conserved_from_primitives(initial, p, V);
    RelFluidState prims = initial;
    sol.states.push_back(initial);
    sol.integral_E.push_back(integrate_field(cons.E));
    sol.integral_M.push_back(integrate_field(cons.M));

    for (long long s = 0; s < steps; ++s) {
        try {
            cons = rk4_step(cons, p, V, step, prims);
            prims = primitive_recovery(cons, p, V, prims);
            prims.time = initial.time + (s + 1) * step;
        } catch (const NumericalError& e) {
            sol.aborted = true;
            sol.diagnostic = e.what();
            return sol;
        }
        if ((s + 1) % sol.snapshot_stride == 0 || s + 1 == steps) {
            sol.states.push_back(prims);
            sol.integral_E.push_back(integrate_field(cons.E));
            sol.integral_M.push_back(integrate_field(cons.M));
        }
    }
    return sol;
}

} // namespace qhdw
