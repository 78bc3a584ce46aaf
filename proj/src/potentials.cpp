// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/potentials.hpp"

#include <cmath>

#include "qhdw/spectral.hpp"

namespace qhdw {

ScalarField mu_thermo(const ScalarField& rho, const PhysicalParams& p, const ScalarField& V) {
    ScalarField r = clamp_floor(rho, p.rho_floor);
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j) out[j] = p.kT * std::log(r[j]) + V[j];
    return out;
}

ScalarField mu_nonlocal_log(const ScalarField& rho, const PhysicalParams& p) {
    ScalarField r = clamp_floor(rho, p.rho_floor);
    ScalarField w(rho.grid);
    for (int j = 0; j < w.size(); ++j) w[j] = std::log(r[j]);
    ScalarField g = spatial_derivative(w, 1);
    ScalarField lap = spatial_derivative(w, 2);
    ScalarField out(rho.grid);
    double pref = -p.kT * p.a2();
    for (int j = 0; j < out.size(); ++j) out[j] = pref * (lap[j] + 0.5 * g[j] * g[j]);
    return out;
}

ScalarField bohm_potential(const ScalarField& rho, const PhysicalParams& p, BohmForm form) {
    ScalarField r = clamp_floor(rho, p.rho_floor);
    ScalarField s(rho.grid);
    for (int j = 0; j < s.size(); ++j) s[j] = std::sqrt(r[j]);
    ScalarField lap = spatial_derivative(s, 2);
    double pref = form == BohmForm::quantum ? -(p.hbar * p.hbar) / (2.0 * p.mass)
                                            : -2.0 * p.kT * p.a2();
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j) out[j] = pref * lap[j] / s[j];
    return out;
}

double thermal_length(const PhysicalParams& p) {
    if (!(p.kT > 0.0))
        throw ValidationError("thermal_length: kT must be positive (length diverges at kT = 0)");
    return p.hbar / std::sqrt(4.0 * p.mass * p.kT);
}

ScalarField korteweg_force(const ScalarField& rho, const PhysicalParams& p) {
    return -1.0 * spatial_derivative(bohm_potential(rho, p, BohmForm::quantum), 1);
}

} // namespace qhdw
