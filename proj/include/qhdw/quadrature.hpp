// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace qhdw {

/// Adaptive Simpson integration of f over [a, b]. Recursion stops when the
/// local Richardson estimate meets rel_tol (scaled by the running integral)
/// or abs_tol, whichever is looser at that node.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, double abs_tol = 1e-300, int max_depth = 50);

} // namespace qhdw
