// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qhdw/grid.hpp"

namespace qhdw {

/// Radial interaction weight u(|x|) with unit mass. Two families:
///  - difference of Gaussians {A, sigma1, B, sigma2} with A - B = 1, so the
///    analytic normalization holds in any dimension;
///  - tabulated radial samples with explicit spacing, renormalized to unit
///    mass at construction.
/// The attraction condition requires a negative second moment, i.e. the
/// wide Gaussian must carry the negative weight.
class Kernel {
public:
    static Kernel difference_of_gaussians(double A, double sigma1, double B, double sigma2,
                                          int dimension = 1);
    /// samples[i] = u(i * spacing), i >= 0. 1D only.
    static Kernel tabulated(std::vector<double> radial_samples, double spacing);

    int dimension() const { return dim_; }

    /// Kernel density at radial distance r in the kernel's own dimension
    /// (line density for 1D, volume density for 3D).
    double value(double r) const;

    /// Second moment in the kernel's dimension: 1D int xi^2 u dxi,
    /// 3D int |x|^2 u d3x. Adaptive quadrature, relative error < 1e-10.
    double second_moment() const;

    /// Unsigned mass outside radius R (validates grid containment).
    double tail_mass_outside(double R) const;

    /// Quadrature cutoff radius beyond which the kernel is negligible.
    double support_radius() const;

    bool is_parametric() const { return family_ == Family::dog; }
    double param_A() const { return A_; }
    double param_B() const { return B_; }
    double param_sigma1() const { return s1_; }
    double param_sigma2() const { return s2_; }

    /// Same kernel dilated by s: u_s(xi) = u(xi/s)/s^d. Parametric only.
    Kernel rescaled(double s) const;

private:
    enum class Family { dog, tabulated };
    Kernel() = default;

    Family family_ = Family::dog;
    int dim_ = 1;
    double A_ = 0, B_ = 0, s1_ = 0, s2_ = 0;
    std::vector<double> samples_;
    double spacing_ = 0;
};

/// a^2 = -m2 (Eq. of the attraction length). Throws "repulsive kernel"
/// when the second moment is non-negative.
double interaction_length_sq(const Kernel& k);

/// Kernel sampled at the grid's periodic offsets (index 0 = zero offset,
/// wrap-around ordering), with discrete mass renormalized to exactly one:
/// sum(w) * dx == 1. Rejects kernels whose tail mass outside L/2 exceeds
/// 1e-12, reporting the measured tail mass.
std::vector<double> sample_kernel_on_grid(const Kernel& k, const Grid1D& g);

} // namespace qhdw
