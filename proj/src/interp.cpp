// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/interp.hpp"

#include <cmath>

namespace qhdw {

double interp_periodic_cubic(const ScalarField& f, double x) {
    const int n = f.size();
    const double L = f.grid.length;
    double u = (x + 0.5 * L) / f.grid.dx;
    u -= std::floor(u / n) * n;
    int i1 = static_cast<int>(std::floor(u));
    double t = u - i1;
    auto at = [&](int j) { return f[((j % n) + n) % n]; };
    double p0 = at(i1 - 1), p1 = at(i1), p2 = at(i1 + 1), p3 = at(i1 + 2);
    // Catmull-Rom
    return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                          t * (3.0 * (p1 - p2) + p3 - p0)));
}

double lagrange_cubic_time(const std::vector<double>& y, double t0, double dt, double t) {
    const int m = static_cast<int>(y.size());
    double s = (t - t0) / dt;
    int k = static_cast<int>(std::floor(s));
    if (k < 1) k = 1;
    if (k > m - 3) k = m - 3;
    double u = s - k; // in [0,1] when the stencil is centered
    double um1 = u + 1.0, up1 = u - 1.0, up2 = u - 2.0;
    double w0 = -u * up1 * up2 / 6.0;
    double w1 = um1 * up1 * up2 / 2.0;
    double w2 = -um1 * u * up2 / 2.0;
    double w3 = um1 * u * up1 / 6.0;
    return w0 * y[static_cast<size_t>(k - 1)] + w1 * y[static_cast<size_t>(k)] +
           w2 * y[static_cast<size_t>(k + 1)] + w3 * y[static_cast<size_t>(k + 2)];
}

} // namespace qhdw
