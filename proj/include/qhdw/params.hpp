// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

namespace qhdw {

/// Shared physical constants. c = infinity selects the instantaneous
/// (non-retarded, non-relativistic) regime; a is the interaction length
/// of the non-local kernel, settable directly or from thermal_length().
struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
    double kT = 0.0;
    double c = std::numeric_limits<double>::infinity();
    double a = 0.0;
    double rho_floor = 1e-12;

    double a2() const { return a * a; }
    bool finite_c() const { return std::isfinite(c); }

    void validate() const;
};

} // namespace qhdw
