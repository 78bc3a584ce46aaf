// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qhdw/grid.hpp"
#include "qhdw/kernel.hpp"
#include "qhdw/params.hpp"

namespace qhdw {

/// Exact convolutional free energy per unit mass:
/// f = kT (u * ln rho) + V, no truncation.
ScalarField nonlocal_free_energy(const ScalarField& rho, const Kernel& k, const ScalarField& V,
                                 const PhysicalParams& p);

/// Second-order Taylor truncation of the above:
/// f = kT ln rho + V - (kT a^2 / 2) lap(ln rho).
ScalarField truncated_free_energy(const ScalarField& rho, const PhysicalParams& p,
                                  const ScalarField& V);

enum class RetardMode {
    retarded, ///< t' = t - |x - x'| / c
    symmetric ///< average of retarded and advanced evaluations
};

/// Retarded non-local free energy at history snapshot `time_index`:
/// f(x,t) = kT sum_j u(xi_j) ln rho(x - xi_j, t - |xi_j|/c) dx + V(x),
/// with off-lattice retarded times cubic-interpolated along the history.
/// Uses the same discrete kernel weights as convolve_periodic, so a static
/// history reproduces nonlocal_free_energy.
ScalarField retarded_free_energy(const SpacetimeField& rho_hist, const Kernel& k,
                                 const PhysicalParams& p, const ScalarField& V, int time_index,
                                 RetardMode mode = RetardMode::retarded);

enum class CorrectionForm {
    dalembertian,    ///< (kT a^2 / 2) box(ln rho), the constitutive law
    direct_expansion ///< (kT m2 / 2)(lap + c^-2 dtt)(ln rho) with m2 = -a^2
};

/// Truncated retarded correction at a history snapshot. The two forms
/// coincide on static histories and differ in the sign of the time term;
/// the comparison report quantifies the difference.
ScalarField truncated_retarded_correction(const SpacetimeField& rho_hist, const PhysicalParams& p,
                                          int time_index, CorrectionForm form);

/// Total free energy functional (gradient form):
/// F = int rho (kT ln rho + V + (kT a^2 / 2)(grad ln rho)^2) dx.
double free_energy_functional(const ScalarField& rho, const PhysicalParams& p,
                              const ScalarField& V);

/// Numeric delta F / delta rho via central one-cell bump perturbations of
/// amplitude 1e-6 max(rho). Matches mu_thermo + mu_nonlocal_log up to an
/// additive constant (the mass-conservation multiplier plus the dropped
/// +kT).
ScalarField functional_derivative_numeric(const ScalarField& rho, const PhysicalParams& p,
                                          const ScalarField& V);

/// Relative L2 mismatch between the numeric functional derivative and
/// mu_thermo + mu_nonlocal_log after removing the additive constant.
double functional_derivative_mismatch(const ScalarField& rho, const PhysicalParams& p,
                                      const ScalarField& V);

} // namespace qhdw
