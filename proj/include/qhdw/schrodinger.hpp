// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "qhdw/grid.hpp"
#include "qhdw/params.hpp"

namespace qhdw {

/// Strang-split spectral evolution of i hbar dpsi/dt = -(hbar^2/2m) lap psi
/// + V psi for a time-independent potential: half potential phase, full
/// kinetic phase, half potential phase. Unitary per step, so the discrete
/// norm is conserved to round-off. Rejects dt max|V|/hbar > pi (potential
/// phase aliasing).
ComplexField ssfm_evolve(ComplexField psi, const ScalarField& Vcl, const PhysicalParams& p,
                         double dt, int steps,
                         const std::function<void(int, const ComplexField&)>& observer = {});

struct MadelungFields {
    ScalarField rho;
    ScalarField S; ///< periodic part of the action
    /// Total action increment across one period (hbar times the phase
    /// winding number times 2 pi); nonzero only for states with net flow.
    double S_winding = 0.0;
    /// Cells where |psi|^2 fell below rho_floor; the phase there is kept
    /// but physically undefined (vacuum).
    int vacuum_count = 0;
};

/// psi = sqrt(rho) exp(i S / hbar), inverted with the phase unwrapped by
/// cumulative nearest-branch continuation from x = -L/2 and anchored so
/// S(-L/2) lies in (-pi hbar, pi hbar]. The winding across the periodic
/// seam is split off into S_winding so S itself stays periodic.
MadelungFields madelung_transform(const ComplexField& psi, const PhysicalParams& p);

ComplexField inverse_madelung(const ScalarField& rho, const ScalarField& S,
                              const PhysicalParams& p, double S_winding = 0.0);

/// int |psi|^2 dx
double norm_squared(const ComplexField& psi);

/// int (hbar^2/2m)|dpsi/dx|^2 + V |psi|^2 dx
double energy_expectation(const ComplexField& psi, const ScalarField& V, const PhysicalParams& p);

struct GroundState {
    ComplexField psi; ///< real, strictly positive, normalized to int psi^2 dx = 1
    double energy = 0.0;
    double residual = 0.0; ///< max |H psi - E psi|
};

/// Ground state of the discrete Hamiltonian (spectral kinetic term plus
/// sampled potential) via a dense symmetric eigensolve. The eigenvector
/// identity makes V + V_Q(psi^2) exactly constant on the grid, which is
/// what the stationarity scenarios rely on.
GroundState discrete_ground_state(const Grid1D& g, const ScalarField& V, const PhysicalParams& p);

} // namespace qhdw
