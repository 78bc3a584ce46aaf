// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qhdw/grid.hpp"

namespace qhdw {

/// Periodic cubic (Catmull-Rom) interpolation of grid samples at x.
double interp_periodic_cubic(const ScalarField& f, double x);

/// 4-point Lagrange cubic interpolation in time over uniformly spaced
/// samples y[i] at t0 + i*dt. The stencil is centered on the target; the
/// caller guarantees two samples on each side.
double lagrange_cubic_time(const std::vector<double>& y, double t0, double dt, double t);

} // namespace qhdw
