// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qhdw/grid.hpp"
#include "qhdw/params.hpp"

namespace qhdw {

/// Hydrodynamic state (rho, S); velocity is grad(S)/m on demand. Evolving
/// the action instead of the velocity keeps the Bernoulli invariant
/// directly observable.
///
/// S stores the periodic part of the action. States with net flow (plane
/// waves) wind by an integer multiple of 2 pi hbar across the box; that
/// winding is carried separately in S_winding (the total increment of the
/// full action over one period) so spectral derivatives see only periodic
/// data. The full action is S(x) + S_winding (x + L/2) / L, and the
/// winding is a constant of the motion.
struct MadelungState {
    ScalarField rho;
    ScalarField S;
    double S_winding = 0.0;
    double time = 0.0;

    MadelungState() = default;
    MadelungState(ScalarField rho_, ScalarField S_, double t, double winding = 0.0);
};

struct MadelungRates {
    ScalarField drho_dt;
    ScalarField dS_dt;
};

/// Continuity and quantum Hamilton-Jacobi right-hand sides:
///   drho/dt = -d/dx(rho dS/dx / m)
///   dS/dt   = -[(dS/dx)^2/(2m) + kT ln rho + V + V_Q]
/// Continuity uses the raw density; the floor clamp is confined to the
/// singular V_Q and the thermal log.
MadelungRates madelung_rhs(const MadelungState& st, const PhysicalParams& p, const ScalarField& V);

ScalarField velocity_field(const MadelungState& st, const PhysicalParams& p);

/// Bernoulli energy density E = v^2 m/2 + kT ln rho + V + V_Q.
ScalarField total_energy_field(const MadelungState& st, const PhysicalParams& p,
                               const ScalarField& V);

struct IntegrateOptions {
    double dt = 0.0;          ///< 0 selects 0.1 m dx^2 / hbar
    int snapshot_stride = 1;  ///< steps between stored snapshots
    std::function<void(const MadelungState&)> on_snapshot;
};

struct MadelungSolution {
    std::vector<MadelungState> states;
    double dt = 0.0;
    int snapshot_stride = 1;
    long long total_steps = 0;
    bool aborted = false;
    std::string diagnostic;
};

/// Classic RK4 in time on the (rho, S) system; snapshots stored at the
/// configured stride (initial and final always included). Aborts with the
/// last stable state if the density grows by more than 10x or turns
/// non-finite.
MadelungSolution integrate(const MadelungState& initial, const PhysicalParams& p,
                           const ScalarField& V, double t_end, IntegrateOptions opts = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> positions; ///< positions[seed][time]
    std::vector<bool> seeded_in_vacuum;
};

/// Bohmian guidance dx/dt = v(x,t): RK4 across snapshot intervals with
/// cubic spatial interpolation of v and positions wrapped periodically.
/// Seeds placed where rho < 1e-8 are flagged per seed.
Trajectory bohmian_trajectories(const MadelungSolution& sol, const std::vector<double>& seeds,
                                const PhysicalParams& p);

} // namespace qhdw
