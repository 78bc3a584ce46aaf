// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qhdw/grid.hpp"
#include "qhdw/params.hpp"

namespace qhdw {

/// kT ln(rho) + V. The thermodynamic "+kT" constant is dropped; the
/// functional-derivative check absorbs it into its additive constant.
ScalarField mu_thermo(const ScalarField& rho, const PhysicalParams& p, const ScalarField& V);

/// Log form of the non-local chemical potential:
/// -kT a^2 [lap(ln rho) + (grad ln rho)^2 / 2].
ScalarField mu_nonlocal_log(const ScalarField& rho, const PhysicalParams& p);

enum class BohmForm {
    quantum, // -(hbar^2 / 2m) lap(sqrt rho) / sqrt(rho)
    thermal  // -2 kT a^2   lap(sqrt rho) / sqrt(rho)
};

/// Density-curvature potential in either normalization. The two coincide
/// when a comes from thermal_length. Mass is carried explicitly; the
/// unit-mass convention is the caller's choice of params.
ScalarField bohm_potential(const ScalarField& rho, const PhysicalParams& p, BohmForm form);

/// Thermal de Broglie length a = hbar / sqrt(4 m kT). Rejects kT = 0.
double thermal_length(const PhysicalParams& p);

/// Korteweg body force -grad(bohm_potential(quantum)).
ScalarField korteweg_force(const ScalarField& rho, const PhysicalParams& p);

} // namespace qhdw
