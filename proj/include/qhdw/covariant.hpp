// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qhdw/grid.hpp"
#include "qhdw/params.hpp"

namespace qhdw {

/// gamma = (1 - v^2/c^2)^(-1/2), computed as ((1-b)(1+b))^(-1/2) so it
/// stays accurate for |v| close to c. Rejects |v| >= c.
double lorentz_factor(double v, double c);

/// Primitive relativistic fluid state: rest-mass density and 3-velocity.
struct RelFluidState {
    ScalarField rho;
    ScalarField v;
    double time = 0.0;

    RelFluidState() = default;
    RelFluidState(ScalarField rho_, ScalarField v_, double t, double c);
};

/// 1+1D stress-energy components under signature diag(1,-1):
///   T00 = -iso + gamma^2 (P/c^2 + rho) c^2
///   T0x =        gamma^2 (P/c^2 + rho) c v
///   Txx = +iso + gamma^2 (P/c^2 + rho) v^2
/// where iso is the enthalpy density h (default) or the bare pressure P
/// (pressure form, to be paired with force_density).
struct StressEnergy1p1 {
    ScalarField T00;
    ScalarField T0x;
    ScalarField Txx;
};

enum class TensorForm { enthalpy, pressure };

/// Enthalpy per unit volume h = P + (V + V_Q) rho with P = kT rho.
ScalarField enthalpy_density(const ScalarField& rho, const PhysicalParams& p, const ScalarField& V);

StressEnergy1p1 stress_energy(const RelFluidState& st, const PhysicalParams& p,
                              const ScalarField& V, TensorForm form = TensorForm::enthalpy);

/// Spatial force density +d/dx[(V + V_Q) rho]; the sign follows the
/// contravariant gradient convention (the spatial component of the
/// four-gradient carries a minus sign that cancels the one in front).
ScalarField force_density(const ScalarField& rho, const ScalarField& V, const ScalarField& VQ);

/// Four-divergence of the mass four-flux J = (rho c, rho v) at a history
/// snapshot: the (1/c) dt(rho c) contraction reduces to drho/dt exactly,
/// so this returns drho/dt + d(rho v)/dx.
ScalarField continuity_residual(const SpacetimeField& rho_hist, const SpacetimeField& v_hist,
                                double c, int time_index);

/// Conserved pair evolved by the stepper: E = T00, M = T0x / c.
struct ConservedPair {
    ScalarField E;
    ScalarField M;
};

ConservedPair conserved_from_primitives(const RelFluidState& st, const PhysicalParams& p,
                                        const ScalarField& V);

/// Pointwise Newton inversion of (E, M) back to (rho, v), warm-started
/// from `guess`. V_Q is frozen from the current iterate's density during
/// each pointwise solve and refreshed between sweeps (Picard; 2 sweeps by
/// default).
RelFluidState primitive_recovery(const ConservedPair& cons, const PhysicalParams& p,
                                 const ScalarField& V, const RelFluidState& guess,
                                 int picard_sweeps = 2);

/// One RK4 step of the method-of-lines system
///   dE/dt = -d/dx(c^2 M),  dM/dt = -d/dx(Txx)
/// with fluxes read from the enthalpy-form tensor at each stage and
/// primitives recovered per stage. Rejects dt > 0.5 dx / c.
RelFluidState rel_fluid_step(const RelFluidState& st, const PhysicalParams& p,
                             const ScalarField& V, double dt);

struct RelSolution {
    std::vector<RelFluidState> states;
    std::vector<double> integral_E; ///< int E dx per stored snapshot
    std::vector<double> integral_M; ///< int M dx per stored snapshot
    double dt = 0.0;
    int snapshot_stride = 1;
    long long total_steps = 0;
    bool aborted = false;
    std::string diagnostic;
};

/// Time loop that carries (E, M) across steps (so conservation reflects the
/// flux form alone) and stores recovered primitives at the given stride.
RelSolution rel_integrate(const RelFluidState& initial, const PhysicalParams& p,
                          const ScalarField& V, double t_end, double dt = 0.0,
                          int snapshot_stride = 1);

} // namespace qhdw
